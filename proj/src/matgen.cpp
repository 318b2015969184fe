#include "precog/matgen.hpp"

#include "precog/rng.hpp"
#include "precog/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace precog::matgen {

namespace {

void require_n(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "matrix dimension must be >= 1, got " + std::to_string(n));
}

void require_ar1_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "AR(1) correlation must satisfy 0 <= rho < 1, got " + std::to_string(rho));
  }
}

void require_ar2(double rho1, double rho2) {
  if (!(std::abs(rho1) < 1.0 && std::abs(rho2) < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "AR(2) poles must satisfy |rho| < 1");
  }
  if (rho1 == rho2 || 1.0 + rho1 * rho2 == 0.0) {
    throw Error(ErrorKind::DegenerateParameters, "AR(2) needs rho1 != rho2 and 1 + rho1 rho2 != 0");
  }
}

}  // namespace

Matrix hilbert(int n, double alpha) {
  require_n(n);
  if (!(alpha >= 0.0)) throw Error(ErrorKind::InvalidInput, "hilbert regularizer must be >= 0");
  Matrix h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  }
  h.diagonal().array() += alpha;
  return h;
}

Matrix ar1_autocorr(int n, double rho) {
  require_n(n);
  require_ar1_rho(rho);
  Matrix r(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) r(i, j) = std::pow(rho, std::abs(i - j));
  }
  return r;
}

Ar2Coefficients ar2_coefficients(double rho1, double rho2) {
  require_ar2(rho1, rho2);
  const double denom = (rho1 - rho2) * (1.0 + rho1 * rho2);
  return {rho1 * (1.0 - rho2 * rho2) / denom, -rho2 * (1.0 - rho1 * rho1) / denom};
}

Matrix ar2_autocorr(int n, double rho1, double rho2) {
  require_n(n);
  const auto [c1, c2] = ar2_coefficients(rho1, rho2);
  Matrix r(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int lag = std::abs(i - j);
      r(i, j) = c1 * std::pow(rho1, lag) + c2 * std::pow(rho2, lag);
    }
  }
  return r;
}

Matrix random_pd(int n, std::uint64_t seed, double reg) {
  require_n(n);
  if (!(reg >= 0.0)) throw Error(ErrorKind::InvalidInput, "random_pd regularizer must be >= 0");
  auto eng = make_engine(seed, Stream::Matrix);
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  // Fill row-major so the draw order does not depend on Eigen's storage.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(eng);
  }
  Matrix a = g.transpose() * g / static_cast<double>(n);
  a = (0.5 * (a + a.transpose())).eval();
  a.diagonal().array() += reg;
  return a;
}

SparsePd random_sparse_pd(int n, double density, std::uint64_t seed, double shift_margin) {
  require_n(n);
  if (!(density > 0.0 && density <= 1.0)) {
    throw Error(ErrorKind::InvalidInput, "density must lie in (0, 1], got " + std::to_string(density));
  }
  if (!(shift_margin > 0.0)) throw Error(ErrorKind::InvalidInput, "shift margin must be > 0");
  auto eng = make_engine(seed, Stream::Matrix);
  std::normal_distribution<double> normal;

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  const auto keep = static_cast<std::size_t>(std::llround(density * static_cast<double>(pairs.size())));
  // Fisher-Yates with explicit draws; std::shuffle's use of the engine is
  // implementation-defined.
  for (std::size_t i = pairs.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(eng() % i);
    std::swap(pairs[i - 1], pairs[j]);
  }
  pairs.resize(keep);
  std::sort(pairs.begin(), pairs.end());

  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = normal(eng);
  for (const auto& [i, j] : pairs) {
    const double v = normal(eng);
    a(i, j) = v;
    a(j, i) = v;
  }
  const double lambda_min = Eigen::SelfAdjointEigenSolver<Matrix>(a, Eigen::EigenvaluesOnly).eigenvalues()[0];
  SparsePd out;
  out.shift = std::abs(lambda_min) + shift_margin;
  a.diagonal().array() += out.shift;
  out.a = std::move(a);
  const auto nnz = (out.a.array() != 0.0).count();
  out.density = static_cast<double>(nnz) / static_cast<double>(n * n);
  return out;
}

const std::vector<double>& sparse_density_presets() {
  static const std::vector<double> presets{5.0 / 6.0, 2.0 / 3.0, 1.0 / 2.0, 1.0 / 3.0, 1.0 / 5.0};
  return presets;
}

const std::vector<std::pair<double, double>>& ar2_parameter_pairs() {
  static const std::vector<std::pair<double, double>> pairs{
      {0.015, 0.01}, {0.15, 0.1}, {0.75, 0.7}, {0.25, 0.01},
      {0.75, 0.1},   {0.9, 0.01}, {0.95, 0.1}, {0.99, 0.7},
  };
  return pairs;
}

std::vector<double> ar1_signal(std::size_t length, double rho, std::uint64_t seed) {
  require_ar1_rho(rho);
  auto eng = make_engine(seed, Stream::Signal);
  std::normal_distribution<double> normal;
  std::vector<double> x(length);
  if (length == 0) return x;
  const double drive = std::sqrt(1.0 - rho * rho);
  x[0] = normal(eng);
  for (std::size_t k = 1; k < length; ++k) x[k] = rho * x[k - 1] + drive * normal(eng);
  return x;
}

std::vector<double> ar2_signal(std::size_t length, double rho1, double rho2, std::uint64_t seed) {
  require_ar2(rho1, rho2);
  const double a1 = rho1 + rho2;
  const double a2 = -rho1 * rho2;
  // Stationary variance of x(k) = a1 x(k-1) + a2 x(k-2) + v(k) for unit-variance v.
  const double variance = (1.0 - a2) / ((1.0 + a2) * ((1.0 - a2) * (1.0 - a2) - a1 * a1));
  const double drive = 1.0 / std::sqrt(variance);
  const double rho_max = std::max(std::abs(rho1), std::abs(rho2));
  // Transient decays like rho_max^k; run until it is below e^-50.
  const auto burn_in = static_cast<std::size_t>(
      rho_max > 0.0 ? std::max(100.0, std::ceil(50.0 / -std::log(rho_max))) : 100.0);

  auto eng = make_engine(seed, Stream::Signal);
  std::normal_distribution<double> normal;
  std::vector<double> x(length);
  double x1 = 0.0;
  double x2 = 0.0;
  for (std::size_t k = 0; k < burn_in + length; ++k) {
    const double next = a1 * x1 + a2 * x2 + drive * normal(eng);
    x2 = x1;
    x1 = next;
    if (k >= burn_in) x[k - burn_in] = next;
  }
  return x;
}

Matrix sample_autocorr(const std::vector<double>& x, int lags) {
  require_n(lags);
  const auto len = x.size();
  Vector r = Vector::Zero(lags);
  for (int lag = 0; lag < lags; ++lag) {
    double acc = 0.0;
    for (std::size_t k = static_cast<std::size_t>(lag); k < len; ++k) acc += x[k] * x[k - static_cast<std::size_t>(lag)];
    r[lag] = len ? acc / static_cast<double>(len) : 0.0;
  }
  Matrix m(lags, lags);
  for (int i = 0; i < lags; ++i) {
    for (int j = 0; j < lags; ++j) m(i, j) = r[std::abs(i - j)];
  }
  return m;
}

const char* to_string(Family f) {
  switch (f) {
    case Family::Hilbert: return "hilbert";
    case Family::RandomPd: return "random-pd";
    case Family::SparsePd: return "sparse-pd";
    case Family::Ar1: return "ar1";
    case Family::Ar2: return "ar2";
    case Family::File: return "file";
  }
  return "unknown";
}

Family parse_family(const std::string& s) {
  for (auto f : {Family::Hilbert, Family::RandomPd, Family::SparsePd, Family::Ar1, Family::Ar2, Family::File}) {
    if (s == to_string(f)) return f;
  }
  throw Error(ErrorKind::InvalidInput, "unknown matrix family '" + s + "'");
}

void MatrixSpec::validate() const {
  if (family != Family::File) require_n(n);
  switch (family) {
    case Family::Hilbert:
      if (!(alpha >= 0.0)) throw Error(ErrorKind::InvalidInput, "hilbert alpha must be >= 0");
      break;
    case Family::RandomPd:
      if (!(reg >= 0.0)) throw Error(ErrorKind::InvalidInput, "random-pd regularizer must be >= 0");
      break;
    case Family::SparsePd:
      if (!(density > 0.0 && density <= 1.0)) throw Error(ErrorKind::InvalidInput, "density must lie in (0, 1]");
      break;
    case Family::Ar1: require_ar1_rho(rho1); break;
    case Family::Ar2: require_ar2(rho1, rho2); break;
    case Family::File:
      if (path.empty()) throw Error(ErrorKind::InvalidInput, "file family needs a path");
      break;
  }
}

std::string MatrixSpec::describe() const {
  auto num = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  };
  switch (family) {
    case Family::Hilbert: return "alpha=" + num(alpha);
    case Family::RandomPd: return "reg=" + num(reg);
    case Family::SparsePd: return "density=" + num(density) + ";margin=" + num(shift_margin);
    case Family::Ar1: return "rho=" + num(rho1);
    case Family::Ar2: return "rho1=" + num(rho1) + ";rho2=" + num(rho2);
    case Family::File: return "path=" + path;
  }
  return {};
}

Matrix generate(const MatrixSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::Hilbert: return hilbert(spec.n, spec.alpha);
    case Family::RandomPd: return random_pd(spec.n, spec.seed, spec.reg);
    case Family::SparsePd: return random_sparse_pd(spec.n, spec.density, spec.seed, spec.shift_margin).a;
    case Family::Ar1: return ar1_autocorr(spec.n, spec.rho1);
    case Family::Ar2: return ar2_autocorr(spec.n, spec.rho1, spec.rho2);
    case Family::File: return read_matrix_file(spec.path);
  }
  throw Error(ErrorKind::InvalidInput, "unknown family");
}

void write_matrix(std::ostream& out, const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix text format holds square matrices");
  out << m.rows() << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), m(i, j), std::chars_format::general, 17);
      if (j) out << ' ';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

Matrix read_matrix(std::istream& in) {
  long n = 0;
  if (!(in >> n) || n < 1) throw Error(ErrorKind::ParseError, "matrix text: expected a positive dimension line");
  Matrix m(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      std::string tok;
      if (!(in >> tok)) {
        throw Error(ErrorKind::ParseError, "matrix text: missing entry at row " + std::to_string(i + 1));
      }
      double v = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw Error(ErrorKind::ParseError, "matrix text: bad number '" + tok + "'");
      }
      m(i, j) = v;
    }
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorKind::ParseError, "matrix text: trailing data after " + std::to_string(n) + " rows");
  return m;
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "' for writing");
  write_matrix(out, m);
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  return read_matrix(in);
}

}  // namespace precog::matgen
