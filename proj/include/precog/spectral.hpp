#pragma once

#include "precog/common.hpp"

namespace precog::spectral {

/// Eigenpairs of a real symmetric matrix under the project-wide canonical
/// convention: eigenvalues ascending, each eigenvector column signed so that
/// its largest-magnitude entry (first on ties) is positive.
struct SpectralPair {
  Matrix u;
  Vector gamma;
  double min_gap = 0.0;     // smallest gap between consecutive eigenvalues
  bool degenerate = false;  // min_gap < 1e-9 * spectral radius
};

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kRelativeDegeneracy = 1e-9;

SpectralPair sym_eig(const Matrix& m);

/// Flips column signs in place so the largest-magnitude entry is positive.
void canonicalize_signs(Matrix& u);

/// lambda_max / lambda_min of a symmetric positive definite matrix.
double cond_spd(const Matrix& m);

/// sigma_max / sigma_min of any square matrix.
double cond_general(const Matrix& m);

struct NormalizedAutocorr {
  Matrix s;
  Vector delta;  // diagonal of the source matrix
};

/// S = D^{-1/2} R D^{-1/2} with D = diag(R).
NormalizedAutocorr power_normalize(const Matrix& r);

/// cond_spd(power_normalize(U^T R U)).
double split_preconditioned_cond(const Matrix& r, const Matrix& u);

/// Moore-Penrose pseudoinverse via SVD.
Matrix pinv(const Matrix& m);

}  // namespace precog::spectral
