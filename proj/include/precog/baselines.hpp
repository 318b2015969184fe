#pragma once

#include "precog/common.hpp"

#include <optional>
#include <string>

namespace precog::baselines {

enum class PreconditionerKind { UnitarySplit, Left };

/// A unitary split U (acting as U^T A U) or a left preconditioner M (acting
/// as M^{-1} A). ILU(0) keeps its triangular factors so it is applied by two
/// triangular solves instead of a dense inverse.
struct Preconditioner {
  PreconditionerKind kind = PreconditionerKind::Left;
  Matrix payload;
  std::string label;
  std::optional<Matrix> lower;  // unit lower factor (ILU only)
  std::optional<Matrix> upper;  // upper factor (ILU only)
};

Preconditioner unitary_split(Matrix u, std::string label);

/// Orthonormal DCT-II basis (row k is the k-th cosine).
Matrix dct_matrix(int n);

/// dct_matrix(n)^T: the DCT basis as columns, ready to use as U in U^T R U.
inline Matrix dct_transform(int n) { return dct_matrix(n).transpose(); }

/// Unitary DFT, entries exp(-2 pi i jk/n) / sqrt(n).
Eigen::MatrixXcd dft_matrix(int n);

/// Condition number of the power-normalized Hermitian matrix F^H R F, F the unitary DFT.
double dft_split_cond(const Matrix& r);

Preconditioner jacobi_precond(const Matrix& a);
Preconditioner gauss_seidel_precond(const Matrix& a);

inline constexpr double kDefaultOmega = 1.5;
Preconditioner sor_precond(const Matrix& a, double omega = kDefaultOmega);
Preconditioner ssor_precond(const Matrix& a, double omega = kDefaultOmega);

/// Zero fill-in incomplete LU on the nonzero pattern of A.
Preconditioner ilu0_precond(const Matrix& a);

/// M^{-1} A for a left preconditioner.
Matrix apply_left(const Preconditioner& p, const Matrix& a);

/// Left: cond_general(M^{-1} A). Unitary split: split_preconditioned_cond(A, U).
double preconditioned_cond(const Preconditioner& p, const Matrix& a);

/// cond_method / cond_precog, or its log10.
double condition_ratio(double cond_method, double cond_precog, bool log10 = false);

}  // namespace precog::baselines
