#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace precog {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class ErrorKind {
  InvalidDimension,
  InvalidInput,
  IndexOutOfRange,
  SymmetryViolation,
  NotPositiveDefinite,
  NumericallySingular,
  NormalizationDomain,
  DimensionMismatch,
  DisconnectedVertex,
  DegenerateSpectrum,
  DegenerateParameters,
  IluBreakdown,
  Divergence,
  ParseError,
};

const char* to_string(ErrorKind kind);

// Every recoverable failure in the library surfaces as this type; the kind
// lets callers (the CLI in particular) map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Max elementwise |M - M^T|.
double asymmetry(const Matrix& m);

/// ||U^T U - I||_F.
double orthonormality_defect(const Matrix& u);

bool all_finite(const Matrix& m);

}  // namespace precog
