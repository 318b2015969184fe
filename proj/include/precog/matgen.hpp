#pragma once

#include "precog/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace precog::matgen {

/// H(i,j) = 1/(i+j-1) with one-based indices, plus alpha * I.
Matrix hilbert(int n, double alpha);

/// Toeplitz rho^|i-j|; 0 <= rho < 1.
Matrix ar1_autocorr(int n, double rho);

struct Ar2Coefficients {
  double c1;
  double c2;
};

Ar2Coefficients ar2_coefficients(double rho1, double rho2);

/// c1 R(rho1) + c2 R(rho2). Not PD for every parameter pair at finite n;
/// callers should check the smallest eigenvalue.
Matrix ar2_autocorr(int n, double rho1, double rho2);

/// G^T G / n + reg I with G standard normal.
Matrix random_pd(int n, std::uint64_t seed, double reg);

struct SparsePd {
  Matrix a;
  double density = 0.0;  // nonzeros / n^2 of the result
  double shift = 0.0;    // diagonal shift applied
};

inline constexpr double kDefaultShiftMargin = 0.1;

/// Symmetric random matrix on a mask with round(density * n(n-1)/2)
/// off-diagonal pairs, shifted by |lambda_min| + shift_margin.
SparsePd random_sparse_pd(int n, double density, std::uint64_t seed,
                          double shift_margin = kDefaultShiftMargin);

/// The five density presets of the sparse experiments.
const std::vector<double>& sparse_density_presets();

/// The eight (rho1, rho2) pairs of the AR(2) experiments.
const std::vector<std::pair<double, double>>& ar2_parameter_pairs();

/// Unit-variance stationary AR(1) sequence.
std::vector<double> ar1_signal(std::size_t length, double rho, std::uint64_t seed);

/// Unit-variance AR(2) sequence with real poles rho1, rho2.
std::vector<double> ar2_signal(std::size_t length, double rho1, double rho2, std::uint64_t seed);

/// Sample autocorrelation matrix (biased estimator, `lags` x `lags`).
Matrix sample_autocorr(const std::vector<double>& x, int lags);

enum class Family { Hilbert, RandomPd, SparsePd, Ar1, Ar2, File };

const char* to_string(Family f);
Family parse_family(const std::string& s);

struct MatrixSpec {
  Family family = Family::Ar1;
  int n = 8;
  double alpha = 0.0;       // hilbert
  double reg = 1e-3;        // random-pd
  double density = 1.0;     // sparse-pd
  double shift_margin = kDefaultShiftMargin;
  double rho1 = 0.5;        // ar1 rho / ar2 first pole
  double rho2 = 0.0;        // ar2 second pole
  std::uint64_t seed = 0;
  std::string path;         // file

  void validate() const;
  /// Family parameters as "key=value;..." for reports.
  std::string describe() const;
};

Matrix generate(const MatrixSpec& spec);

/// Matrix text format: a line with n, then n rows of n numbers, 17 significant digits.
void write_matrix(std::ostream& out, const Matrix& m);
Matrix read_matrix(std::istream& in);
void write_matrix_file(const std::string& path, const Matrix& m);
Matrix read_matrix_file(const std::string& path);

}  // namespace precog::matgen
