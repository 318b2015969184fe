#include "precog/bench.hpp"

#include "precog/baselines.hpp"
#include "precog/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

namespace precog::bench {

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names{"precog", "dct", "dft", "jacobi", "gauss-seidel",
                                              "sor", "ssor", "ilu0", "none"};
  return names;
}

bool is_method(const std::string& name) {
  const auto& names = method_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

struct Scored {
  double cond = 0.0;
  int iterations = 0;
};

Scored score(const std::string& method, const BenchCase& c, const BenchOptions& options) {
  const Matrix& a = c.a;
  const double omega = options.omega > 0.0 ? options.omega : baselines::kDefaultOmega;
  if (method == "precog") {
    const int n = static_cast<int>(a.rows());
    const auto topology = options.band > 0 ? graph::banded_topology(n, options.band) : graph::full_topology(n);
    const auto result = optimize(a, topology, c.hp);
    return {result.cond_best, static_cast<int>(result.history.size())};
  }
  if (method == "none") return {spectral::cond_spd(spectral::power_normalize(a).s)};
  if (method == "dct") return {spectral::split_preconditioned_cond(a, baselines::dct_transform(static_cast<int>(a.rows())))};
  if (method == "dft") return {baselines::dft_split_cond(a)};
  if (method == "jacobi") return {baselines::preconditioned_cond(baselines::jacobi_precond(a), a)};
  if (method == "gauss-seidel") return {baselines::preconditioned_cond(baselines::gauss_seidel_precond(a), a)};
  if (method == "sor") return {baselines::preconditioned_cond(baselines::sor_precond(a, omega), a)};
  if (method == "ssor") return {baselines::preconditioned_cond(baselines::ssor_precond(a, omega), a)};
  if (method == "ilu0") return {baselines::preconditioned_cond(baselines::ilu0_precond(a), a)};
  throw Error(ErrorKind::InvalidInput, "unknown method '" + method + "'");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Quote a field only when it contains a CSV metacharacter.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::vector<BenchmarkRecord> run_bench(const std::vector<BenchCase>& cases, const std::vector<std::string>& methods,
                                       const BenchOptions& options) {
  for (const auto& m : methods) {
    if (!is_method(m)) throw Error(ErrorKind::InvalidInput, "unknown method '" + m + "'");
  }
  std::vector<std::string> wanted = methods;
  if (std::find(wanted.begin(), wanted.end(), "precog") == wanted.end()) wanted.push_back("precog");
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

  std::vector<BenchmarkRecord> records;
  for (const auto& c : cases) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double cond_raw = nan;
    try {
      cond_raw = spectral::cond_spd(spectral::power_normalize(c.a).s);
    } catch (const Error&) {
      // Left as NaN; rows still report their own status.
    }

    std::vector<BenchmarkRecord> rows;
    double cond_precog = nan;
    for (const auto& method : wanted) {
      BenchmarkRecord rec;
      rec.matrix_id = c.matrix_id;
      rec.n = static_cast<int>(c.a.rows());
      rec.family = matgen::to_string(c.spec.family);
      rec.params = c.spec.describe();
      rec.method = method;
      rec.cond_raw = cond_raw;
      rec.seed = c.hp.seed;
      rec.gradient_mode = to_string(c.hp.gradient_mode);
      const auto start = std::chrono::steady_clock::now();
      try {
        const Scored s = score(method, c, options);
        rec.cond_method = s.cond;
        rec.iterations = s.iterations;
      } catch (const Error& e) {
        rec.status = to_string(e.kind());
        rec.cond_method = nan;
      }
      const auto stop = std::chrono::steady_clock::now();
      if (options.record_timing) rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      if (method == "precog" && rec.status == "ok") cond_precog = rec.cond_method;
      rows.push_back(std::move(rec));
    }
    for (auto& rec : rows) {
      if (rec.status == "ok" && std::isfinite(cond_precog)) {
        rec.condition_ratio = baselines::condition_ratio(rec.cond_method, cond_precog);
        rec.log10_ratio = std::log10(rec.condition_ratio);
      } else {
        rec.condition_ratio = nan;
        rec.log10_ratio = nan;
      }
      records.push_back(std::move(rec));
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const BenchmarkRecord& a, const BenchmarkRecord& b) {
    return std::tie(a.matrix_id, a.method) < std::tie(b.matrix_id, b.method);
  });
  return records;
}

std::string bench_csv_header() {
  return "matrix_id,n,family,params,method,cond_raw,cond_method,condition_ratio,log10_ratio,"
         "iterations,wall_ms,seed,gradient_mode,status,version";
}

void write_bench_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records) {
  out << bench_csv_header() << '\n';
  for (const auto& r : records) {
    out << field(r.matrix_id) << ',' << r.n << ',' << field(r.family) << ',' << field(r.params) << ','
        << field(r.method) << ',' << fmt(r.cond_raw) << ',' << fmt(r.cond_method) << ',' << fmt(r.condition_ratio)
        << ',' << fmt(r.log10_ratio) << ',' << r.iterations << ',' << fmt(r.wall_ms) << ',' << r.seed << ','
        << r.gradient_mode << ',' << r.status << ',' << kToolVersion << '\n';
  }
}

}  // namespace precog::bench
