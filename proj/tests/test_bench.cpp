#include "doctest.h"

#include "precog/baselines.hpp"
#include "precog/bench.hpp"
#include "precog/spectral.hpp"

#include <sstream>

using namespace precog;
using namespace precog::bench;

namespace {

BenchCase ar1_case(int n, double rho, int iters) {
  BenchCase c;
  c.spec.family = matgen::Family::Ar1;
  c.spec.n = n;
  c.spec.rho1 = rho;
  c.a = matgen::generate(c.spec);
  c.matrix_id = "ar1-" + std::to_string(n);
  c.hp.max_iter = iters;
  c.hp.seed = 3;
  return c;
}

}  // namespace

TEST_CASE("bench rows: precog always present, ratios composed from module results") {
  const auto c = ar1_case(8, 0.9, 50);
  const auto rows = run_bench({c}, {"dct", "none"});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].method == "dct");
  CHECK(rows[1].method == "none");
  CHECK(rows[2].method == "precog");

  const double dct = spectral::split_preconditioned_cond(c.a, baselines::dct_transform(8));
  const double precog = optimize(c.a, graph::banded_topology(8, 2), c.hp).cond_best;
  CHECK(rows[0].cond_method == dct);
  CHECK(rows[2].cond_method == precog);
  CHECK(rows[0].condition_ratio == doctest::Approx(dct / precog));
  CHECK(rows[0].log10_ratio == doctest::Approx(std::log10(dct / precog)));
  CHECK(rows[2].condition_ratio == 1.0);
  CHECK(rows[1].cond_method == spectral::cond_spd(spectral::power_normalize(c.a).s));
  CHECK(rows[1].cond_method == rows[1].cond_raw);
  CHECK(rows[2].iterations == 50);
  CHECK(rows[0].gradient_mode == "perturbation");
}

TEST_CASE("bench CSV is byte-identical across runs and sorted") {
  std::vector<BenchCase> cases{ar1_case(6, 0.5, 20), ar1_case(5, 0.9, 20)};
  const std::vector<std::string> methods(method_names().begin(), method_names().end());
  std::ostringstream a, b;
  write_bench_csv(a, run_bench(cases, methods));
  write_bench_csv(b, run_bench(cases, methods));
  CHECK(a.str() == b.str());
  const auto rows = run_bench(cases, methods);
  CHECK(rows.size() == 2 * method_names().size());
  CHECK(rows.front().matrix_id == "ar1-5");
  CHECK(a.str().rfind(bench_csv_header() + "\n", 0) == 0);
}

TEST_CASE("bench records method failures in the status column") {
  BenchCase c;
  c.spec.family = matgen::Family::File;
  c.spec.path = "inline";
  c.matrix_id = "singular-pivot";
  c.a = Matrix(2, 2);
  c.a << 1, 0.999999, 0.999999, 1;
  c.hp.max_iter = 5;
  auto rows = run_bench({c}, {"ilu0", "jacobi"});
  CHECK(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.status == "ok");

  // A nonsymmetric input breaks the split methods but not the left ones.
  c.a << 2, 1, 0, 2;
  rows = run_bench({c}, {"jacobi", "dct"});
  CHECK(rows[0].method == "dct");
  CHECK(rows[0].status == "symmetry-violation");
  CHECK(rows[1].status == "ok");
  CHECK(rows[2].method == "precog");
  CHECK(rows[2].status != "ok");
  CHECK(std::isnan(rows[1].condition_ratio));
  CHECK_THROWS_AS(run_bench({c}, {"multigrid"}), Error);
}
