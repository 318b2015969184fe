#include "precog/common.hpp"

namespace precog {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::SymmetryViolation: return "symmetry-violation";
    case ErrorKind::NotPositiveDefinite: return "not-positive-definite";
    case ErrorKind::NumericallySingular: return "numerically-singular";
    case ErrorKind::NormalizationDomain: return "normalization-domain";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::DisconnectedVertex: return "disconnected-vertex";
    case ErrorKind::DegenerateSpectrum: return "degenerate-spectrum";
    case ErrorKind::DegenerateParameters: return "degenerate-parameters";
    case ErrorKind::IluBreakdown: return "ilu-breakdown";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::ParseError: return "parse-error";
  }
  return "unknown";
}

double asymmetry(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

double orthonormality_defect(const Matrix& u) {
  return (u.transpose() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace precog
