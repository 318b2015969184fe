#include "doctest.h"

#include "oracles.hpp"
#include "precog/baselines.hpp"
#include "precog/tdlms.hpp"

#include <cmath>
#include <sstream>

using namespace precog;
using namespace precog::tdlms;

TEST_CASE("lms step") {
  auto s = FilterState::zeros(3);
  s.w << 0.2, -0.1, 0.4;
  const Vector before = s.w;
  CHECK(lms_step(s, Vector::Zero(3), 1.5, 0.1) == 1.5);
  CHECK(s.w == before);

  Vector x(3);
  x << 1, 2, 3;
  CHECK(lms_step(s, x, s.w.dot(x), 0.1) == 0.0);
  CHECK(s.w == before);

  auto z = FilterState::zeros(4);
  Vector e0 = Vector::Zero(4);
  e0[0] = 1.0;
  CHECK(lms_step(z, e0, 1.0, 0.5) == 1.0);
  Vector want = Vector::Zero(4);
  want[0] = 0.5;
  CHECK(z.w == want);
}

TEST_CASE("tdlms step") {
  FilterConfig cfg;
  cfg.taps = 4;
  cfg.step = 0.05;
  cfg.transform = Matrix::Identity(4, 4);

  auto s = FilterState::zeros(4);
  CHECK(tdlms_step(s, Vector::Zero(4), 0.7, cfg) == 0.7);
  CHECK(s.w.isZero(0.0));

  // Identity transform with powers held at 1: one normalized LMS step.
  std::mt19937_64 eng(2);
  auto a = FilterState::zeros(4);
  auto b = FilterState::zeros(4);
  const Vector x = oracle::random_matrix(4, 1, eng);
  a.power = x.cwiseAbs2();  // fixed point of the power recursion
  b.power = a.power;
  tdlms_step(a, x, 1.0, cfg);
  const double e = 1.0;
  const Vector expect = cfg.step * e * x.array() / (b.power.array() + cfg.delta_pow);
  CHECK((a.w - expect).cwiseAbs().maxCoeff() <= 1e-12);

  // Energy is preserved by the orthonormal transform.
  const Matrix u = oracle::random_orthonormal(4, eng);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector xv = oracle::random_matrix(4, 1, eng);
    CHECK(std::abs((u.transpose() * xv).norm() - xv.norm()) <= 1e-12 * std::max(1.0, xv.norm()));
  }
}

TEST_CASE("first-update sign pattern does not depend on the step") {
  std::mt19937_64 eng(3);
  const Vector x = oracle::random_matrix(6, 1, eng);
  FilterConfig cfg;
  cfg.taps = 6;
  cfg.transform = oracle::random_orthonormal(6, eng);
  for (double step : {0.01, 0.02, 0.04}) {
    auto lms = FilterState::zeros(6);
    auto td = FilterState::zeros(6);
    lms_step(lms, x, 1.0, step);
    cfg.step = step;
    tdlms_step(td, x, 1.0, cfg);
    auto ref_lms = FilterState::zeros(6);
    auto ref_td = FilterState::zeros(6);
    lms_step(ref_lms, x, 1.0, 0.005);
    cfg.step = 0.005;
    tdlms_step(ref_td, x, 1.0, cfg);
    CHECK((lms.w.array().sign() == ref_lms.w.array().sign()).all());
    CHECK((td.w.array().sign() == ref_td.w.array().sign()).all());
  }
}

TEST_CASE("energy preservation over a long run") {
  std::mt19937_64 eng(4);
  const Matrix u = baselines::dct_transform(8);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 10000; ++k) {
    Vector x(8);
    for (auto& v : x) v = normal(eng);
    const double nx = x.squaredNorm();
    CHECK(std::abs((u.transpose() * x).squaredNorm() - nx) <= 1e-10 * std::max(1.0, nx));
  }
}

TEST_CASE("config validation") {
  FilterConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.transform = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.transform = 2.0 * Matrix::Identity(16, 16);
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.transform.reset();
  cfg.gamma_pow = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK_THROWS_AS(system_id_experiment(Vector::Ones(3), {}, 30.0, FilterConfig{}, 10, 1), Error);
}

TEST_CASE("system identification on white input") {
  FilterConfig cfg;
  cfg.taps = 8;
  cfg.step = 0.02;
  const Vector plant = random_plant(8, 1);
  const auto plain = system_id_experiment(plant, {}, INFINITY, cfg, 5000, 1);
  CHECK(plain.misalignment_db(4999) < -60.0);
  CHECK(plain.e2.size() == 5000);

  cfg.transform = Matrix::Identity(8, 8);
  const auto normalized = system_id_experiment(plant, {}, INFINITY, cfg, 5000, 1);
  CHECK(normalized.misalignment_db(4999) < -60.0);
  CHECK(plain.iterations_to_threshold(-20.0).has_value());
  CHECK(normalized.iterations_to_threshold(-20.0).has_value());
  for (double m : normalized.misalignment) CHECK(m >= 0.0);
}

TEST_CASE("DCT-TDLMS beats plain LMS on strongly correlated input") {
  FilterConfig cfg;
  cfg.taps = 16;
  cfg.step = 0.01;
  const InputSpec in{InputFamily::Ar1, 0.9, 0.0};
  for (std::uint64_t seed : {1, 2, 3}) {
    const Vector plant = random_plant(16, seed);
    cfg.transform.reset();
    const auto lms = system_id_experiment(plant, in, 30.0, cfg, 20000, seed).iterations_to_threshold(-20.0);
    cfg.transform = baselines::dct_transform(16);
    const auto dct = system_id_experiment(plant, in, 30.0, cfg, 20000, seed).iterations_to_threshold(-20.0);
    REQUIRE(dct.has_value());
    CHECK((!lms.has_value() || *dct < *lms));
  }
}

TEST_CASE("traces are deterministic and export as CSV") {
  FilterConfig cfg;
  cfg.taps = 4;
  const Vector plant = random_plant(4, 2);
  const InputSpec in{InputFamily::Ar2, 0.75, 0.1};
  const auto a = system_id_experiment(plant, in, 20.0, cfg, 200, 9);
  const auto b = system_id_experiment(plant, in, 20.0, cfg, 200, 9);
  CHECK(a.e2 == b.e2);
  CHECK(a.misalignment == b.misalignment);
  std::ostringstream out;
  write_trace_csv(out, a);
  const std::string csv = out.str();
  CHECK(csv.rfind("k,e2,misalignment_db\n0,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 201);
  CHECK(a.iterations_to_threshold(-500.0) == std::nullopt);
}
