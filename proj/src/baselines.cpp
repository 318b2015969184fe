#include "precog/baselines.hpp"

#include "precog/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace precog::baselines {

namespace {

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": expected a nonempty square matrix");
  }
}

void require_nonzero_diagonal(const Matrix& a, const char* what) {
  require_square(a, what);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (a(i, i) == 0.0) {
      throw Error(ErrorKind::InvalidInput, std::string(what) + ": zero diagonal entry at " + std::to_string(i + 1));
    }
  }
}

void require_omega(double omega) {
  if (!(omega > 0.0 && omega < 2.0)) {
    throw Error(ErrorKind::InvalidInput, "relaxation factor must lie in (0, 2), got " + std::to_string(omega));
  }
}

Preconditioner left(Matrix m, std::string label) {
  Preconditioner p;
  p.kind = PreconditionerKind::Left;
  p.payload = std::move(m);
  p.label = std::move(label);
  return p;
}

}  // namespace

Preconditioner unitary_split(Matrix u, std::string label) {
  if (u.rows() != u.cols() || orthonormality_defect(u) > 1e-8) {
    throw Error(ErrorKind::InvalidInput, "unitary split payload must be orthonormal");
  }
  Preconditioner p;
  p.kind = PreconditionerKind::UnitarySplit;
  p.payload = std::move(u);
  p.label = std::move(label);
  return p;
}

Matrix dct_matrix(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "dct_matrix needs n >= 1");
  Matrix c(n, n);
  const double nn = static_cast<double>(n);
  for (int k = 0; k < n; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / nn) : std::sqrt(2.0 / nn);
    for (int j = 0; j < n; ++j) c(k, j) = scale * std::cos(std::numbers::pi * (2.0 * j + 1.0) * k / (2.0 * nn));
  }
  return c;
}

Eigen::MatrixXcd dft_matrix(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "dft_matrix needs n >= 1");
  Eigen::MatrixXcd f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      // Reduce j*k mod n first so the angle stays small for large n.
      const auto idx = static_cast<double>((static_cast<long>(j) * k) % n);
      f(j, k) = std::polar(scale, -2.0 * std::numbers::pi * idx / static_cast<double>(n));
    }
  }
  return f;
}

double dft_split_cond(const Matrix& r) {
  require_square(r, "dft_split_cond");
  using Complex = std::complex<double>;
  using CMatrix = Eigen::MatrixXcd;
  const auto n = r.rows();
  const CMatrix f = dft_matrix(static_cast<int>(n));
  CMatrix rt = f.adjoint() * r.cast<Complex>() * f;
  rt = (0.5 * (rt + rt.adjoint())).eval();
  Vector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d[i] = rt(i, i).real();
    if (!(d[i] > 0.0)) {
      throw Error(ErrorKind::NormalizationDomain, "dft_split_cond: nonpositive transformed power in bin " + std::to_string(i));
    }
  }
  const Vector inv_sqrt = d.cwiseSqrt().cwiseInverse();
  const CMatrix s = inv_sqrt.cast<Complex>().asDiagonal() * rt * inv_sqrt.cast<Complex>().asDiagonal();
  const Vector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(s, Eigen::EigenvaluesOnly).eigenvalues();
  if (!(ev[0] > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "dft_split_cond: R is not positive definite");
  return ev[n - 1] / ev[0];
}

Preconditioner jacobi_precond(const Matrix& a) {
  require_nonzero_diagonal(a, "jacobi");
  return left(Matrix(a.diagonal().asDiagonal()), "jacobi");
}

Preconditioner gauss_seidel_precond(const Matrix& a) {
  require_nonzero_diagonal(a, "gauss-seidel");
  return left(Matrix(a.triangularView<Eigen::Lower>()), "gauss-seidel");
}

Preconditioner sor_precond(const Matrix& a, double omega) {
  require_omega(omega);
  require_nonzero_diagonal(a, "sor");
  Matrix m = a.triangularView<Eigen::StrictlyLower>();
  m.diagonal() = a.diagonal() / omega;
  return left(std::move(m), "sor");
}

Preconditioner ssor_precond(const Matrix& a, double omega) {
  require_omega(omega);
  require_nonzero_diagonal(a, "ssor");
  Matrix lower = a.triangularView<Eigen::StrictlyLower>();
  lower.diagonal() = a.diagonal() / omega;
  Matrix upper = a.transpose().triangularView<Eigen::StrictlyUpper>();
  upper.diagonal() = a.diagonal() / omega;
  const Vector d_inv = a.diagonal().cwiseInverse();
  Matrix m = (omega / (2.0 - omega)) * lower * d_inv.asDiagonal() * upper;
  return left(std::move(m), "ssor");
}

Preconditioner ilu0_precond(const Matrix& a) {
  require_square(a, "ilu0");
  const auto n = a.rows();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> pattern = (a.array() != 0.0);
  pattern.diagonal().setConstant(true);
  Matrix lu = a;
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index k = 0; k < i; ++k) {
      if (!pattern(i, k)) continue;
      if (lu(k, k) == 0.0) throw Error(ErrorKind::IluBreakdown, "zero pivot at index " + std::to_string(k + 1));
      lu(i, k) /= lu(k, k);
      for (Eigen::Index j = k + 1; j < n; ++j) {
        if (pattern(i, j)) lu(i, j) -= lu(i, k) * lu(k, j);
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lu(i, i) == 0.0) throw Error(ErrorKind::IluBreakdown, "zero pivot at index " + std::to_string(i + 1));
  }
  Matrix lower = lu.triangularView<Eigen::UnitLower>();
  Matrix upper = lu.triangularView<Eigen::Upper>();
  Preconditioner p = left(lower * upper, "ilu0");
  p.lower = std::move(lower);
  p.upper = std::move(upper);
  return p;
}

Matrix apply_left(const Preconditioner& p, const Matrix& a) {
  if (p.kind != PreconditionerKind::Left) throw Error(ErrorKind::InvalidInput, "apply_left on a unitary split");
  if (p.payload.rows() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "preconditioner and matrix sizes differ");
  if (p.lower && p.upper) {
    const Matrix y = p.lower->triangularView<Eigen::UnitLower>().solve(a);
    return p.upper->triangularView<Eigen::Upper>().solve(y);
  }
  const Matrix& m = p.payload;
  if (m.isLowerTriangular(0.0)) return m.triangularView<Eigen::Lower>().solve(a);
  return m.partialPivLu().solve(a);
}

double preconditioned_cond(const Preconditioner& p, const Matrix& a) {
  if (p.kind == PreconditionerKind::UnitarySplit) return spectral::split_preconditioned_cond(a, p.payload);
  return spectral::cond_general(apply_left(p, a));
}

double condition_ratio(double cond_method, double cond_precog, bool log10) {
  if (!(cond_method > 0.0) || !(cond_precog > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "condition numbers must be positive");
  }
  const double ratio = cond_method / cond_precog;
  return log10 ? std::log10(ratio) : ratio;
}

}  // namespace precog::baselines
