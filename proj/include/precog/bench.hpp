#pragma once

#include "precog/matgen.hpp"
#include "precog/precog.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace precog::bench {

inline constexpr const char* kToolVersion = "0.1.0";

/// Registered method names, in report order.
const std::vector<std::string>& method_names();
bool is_method(const std::string& name);

struct BenchCase {
  std::string matrix_id;
  matgen::MatrixSpec spec;
  Matrix a;
  HyperParams hp;  // drives the precog row of this case
};

struct BenchmarkRecord {
  std::string matrix_id;
  int n = 0;
  std::string family;
  std::string params;
  std::string method;
  double cond_raw = 0.0;     // power-normalized condition of the input
  double cond_method = 0.0;
  double condition_ratio = 0.0;  // cond_method / cond_precog
  double log10_ratio = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
  std::string gradient_mode;
  std::string status = "ok";  // otherwise the failure kind
};

struct BenchOptions {
  double omega = 0.0;  // 0: the SOR/SSOR default
  int band = 2;        // precog topology; 0 means the complete graph
  /// Wall time is nondeterministic; it is written as 0 unless enabled.
  bool record_timing = false;
};

/// One record per (case, method); precog is always scored because it is the
/// ratio denominator. Records are sorted by (matrix_id, method).
std::vector<BenchmarkRecord> run_bench(const std::vector<BenchCase>& cases, const std::vector<std::string>& methods,
                                       const BenchOptions& options = {});

/// Fixed header, full round-trip precision.
void write_bench_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records);

std::string bench_csv_header();

}  // namespace precog::bench
