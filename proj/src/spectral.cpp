#include "precog/spectral.hpp"

#include <cmath>

namespace precog::spectral {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": expected a nonempty square matrix");
  }
}

void require_symmetric(const Matrix& m, const char* what) {
  require_square(m, what);
  if (!m.allFinite()) throw Error(ErrorKind::InvalidInput, std::string(what) + ": non-finite entry");
  const double asym = asymmetry(m);
  if (asym > kSymmetryTolerance) {
    throw Error(ErrorKind::SymmetryViolation, std::string(what) + ": max |M - M^T| = " + std::to_string(asym));
  }
}

}  // namespace

void canonicalize_signs(Matrix& u) {
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    const double peak = u.col(c).cwiseAbs().maxCoeff();
    // Magnitudes within rounding of the peak count as ties; the first wins.
    Eigen::Index pick = 0;
    while (std::abs(u(pick, c)) < peak * (1.0 - 1e-12)) ++pick;
    if (u(pick, c) < 0.0) u.col(c) = -u.col(c);
  }
}

SpectralPair sym_eig(const Matrix& m) {
  require_symmetric(m, "sym_eig");
  // Symmetrize so the solver sees exactly symmetric input.
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::InvalidInput, "sym_eig: solver did not converge");

  SpectralPair sp;
  sp.gamma = solver.eigenvalues();  // ascending
  sp.u = solver.eigenvectors();
  canonicalize_signs(sp.u);

  const Eigen::Index n = sp.gamma.size();
  sp.min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 1; k < n; ++k) sp.min_gap = std::min(sp.min_gap, sp.gamma[k] - sp.gamma[k - 1]);
  const double radius = sp.gamma.cwiseAbs().maxCoeff();
  sp.degenerate = n > 1 && sp.min_gap < kRelativeDegeneracy * radius;
  return sp;
}

double cond_spd(const Matrix& m) {
  require_symmetric(m, "cond_spd");
  const Matrix sym = 0.5 * (m + m.transpose());
  const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues();
  const double lo = ev[0];
  const double hi = ev[ev.size() - 1];
  if (!(lo > 0.0)) {
    throw Error(ErrorKind::NotPositiveDefinite, "cond_spd: smallest eigenvalue " + std::to_string(lo) + " <= 0");
  }
  return hi / lo;
}

double cond_general(const Matrix& m) {
  require_square(m, "cond_general");
  if (!m.allFinite()) throw Error(ErrorKind::InvalidInput, "cond_general: non-finite entry");
  const Vector sv = Eigen::JacobiSVD<Matrix>(m).singularValues();  // descending
  const double hi = sv[0];
  const double lo = sv[sv.size() - 1];
  if (!(hi > 0.0) || lo < 1e-14 * hi) {
    throw Error(ErrorKind::NumericallySingular, "cond_general: sigma_min below 1e-14 * sigma_max");
  }
  return hi / lo;
}

NormalizedAutocorr power_normalize(const Matrix& r) {
  require_square(r, "power_normalize");
  NormalizedAutocorr out;
  out.delta = r.diagonal();
  for (Eigen::Index i = 0; i < out.delta.size(); ++i) {
    if (!(out.delta[i] > 0.0)) {
      throw Error(ErrorKind::NormalizationDomain,
                  "power_normalize: diagonal entry " + std::to_string(i) + " = " + std::to_string(out.delta[i]));
    }
  }
  const Vector inv_sqrt = out.delta.cwiseSqrt().cwiseInverse();
  out.s = inv_sqrt.asDiagonal() * r * inv_sqrt.asDiagonal();
  // Unit diagonal exactly; the scaling above can leave 1 ulp of error.
  out.s.diagonal().setOnes();
  return out;
}

double split_preconditioned_cond(const Matrix& r, const Matrix& u) {
  if (u.rows() != r.rows() || u.cols() != r.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "split_preconditioned_cond: U and R shapes differ");
  }
  require_symmetric(r, "split_preconditioned_cond");
  const Matrix rt = u.transpose() * r * u;
  return cond_spd(power_normalize(0.5 * (rt + rt.transpose())).s);
}

Matrix pinv(const Matrix& m) {
  if (m.size() == 0) return Matrix(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double cutoff = static_cast<double>(std::max(m.rows(), m.cols())) *
                        std::numeric_limits<double>::epsilon() * (sv.size() ? sv[0] : 0.0);
  Vector inv = Vector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) inv[i] = 1.0 / sv[i];
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace precog::spectral
