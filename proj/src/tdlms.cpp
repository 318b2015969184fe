#include "precog/tdlms.hpp"

#include "precog/matgen.hpp"
#include "precog/rng.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace precog::tdlms {

void FilterConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); };
  if (taps < 1) fail("taps must be positive");
  if (!(step > 0.0)) fail("step must be > 0");
  if (!(gamma_pow > 0.0 && gamma_pow < 1.0)) fail("gamma_pow must lie in (0, 1)");
  if (!(delta_pow > 0.0)) fail("delta_pow must be > 0");
  if (transform) {
    if (transform->rows() != taps || transform->cols() != taps) {
      throw Error(ErrorKind::DimensionMismatch, "transform must be taps x taps");
    }
    if (orthonormality_defect(*transform) > 1e-8) fail("transform must be orthonormal");
  }
}

FilterState FilterState::zeros(int taps) { return {Vector::Zero(taps), Vector::Ones(taps)}; }

double lms_step(FilterState& state, const Vector& x, double d, double step) {
  const double e = d - state.w.dot(x);
  state.w.noalias() += step * e * x;
  return e;
}

double tdlms_step(FilterState& state, const Vector& x, double d, const FilterConfig& cfg) {
  const Vector v = cfg.transform->transpose() * x;
  state.power = cfg.gamma_pow * state.power + (1.0 - cfg.gamma_pow) * v.cwiseAbs2();
  const double e = d - state.w.dot(v);
  state.w.array() += cfg.step * e * v.array() / (state.power.array() + cfg.delta_pow);
  return e;
}

double MseTrace::misalignment_db(std::size_t k) const { return 10.0 * std::log10(misalignment.at(k)); }

std::optional<std::size_t> MseTrace::iterations_to_threshold(double threshold_db) const {
  const double linear = std::pow(10.0, threshold_db / 10.0);
  for (std::size_t k = 0; k < misalignment.size(); ++k) {
    if (misalignment[k] <= linear) return k;
  }
  return std::nullopt;
}

Vector random_plant(int taps, std::uint64_t seed) {
  if (taps < 1) throw Error(ErrorKind::InvalidDimension, "plant needs at least one tap");
  auto eng = make_engine(seed, Stream::Plant);
  std::normal_distribution<double> normal;
  Vector h(taps);
  for (int i = 0; i < taps; ++i) h[i] = normal(eng);
  return h;
}

MseTrace system_id_experiment(const Vector& plant, const InputSpec& input, double snr_db, const FilterConfig& cfg,
                              std::size_t run_len, std::uint64_t seed) {
  cfg.validate();
  if (plant.size() != cfg.taps) throw Error(ErrorKind::DimensionMismatch, "plant length must equal taps");
  const double plant_energy = plant.squaredNorm();
  if (!(plant_energy > 0.0)) throw Error(ErrorKind::InvalidInput, "plant must be nonzero");

  const auto taps = static_cast<std::size_t>(cfg.taps);
  const std::size_t total = run_len + taps - 1;
  std::vector<double> x;
  switch (input.family) {
    case InputFamily::White: x = matgen::ar1_signal(total, 0.0, seed); break;
    case InputFamily::Ar1: x = matgen::ar1_signal(total, input.rho1, seed); break;
    case InputFamily::Ar2: x = matgen::ar2_signal(total, input.rho1, input.rho2, seed); break;
  }

  // Tap vector at time k holds x(k), x(k-1), ..., x(k-N+1).
  auto tap_vector = [&](std::size_t k) {
    Vector v(cfg.taps);
    for (std::size_t i = 0; i < taps; ++i) v[static_cast<Eigen::Index>(i)] = x[k + taps - 1 - i];
    return v;
  };

  std::vector<double> clean(run_len);
  double clean_power = 0.0;
  for (std::size_t k = 0; k < run_len; ++k) {
    clean[k] = plant.dot(tap_vector(k));
    clean_power += clean[k] * clean[k];
  }
  clean_power /= static_cast<double>(std::max<std::size_t>(run_len, 1));
  const double noise_std = std::isinf(snr_db) ? 0.0 : std::sqrt(clean_power / std::pow(10.0, snr_db / 10.0));

  auto noise_rng = make_engine(seed, Stream::Noise);
  std::normal_distribution<double> normal;
  FilterState state = FilterState::zeros(cfg.taps);
  MseTrace trace;
  trace.e2.reserve(run_len);
  trace.misalignment.reserve(run_len);
  for (std::size_t k = 0; k < run_len; ++k) {
    const Vector xv = tap_vector(k);
    const double d = clean[k] + noise_std * normal(noise_rng);
    const double e = cfg.transform ? tdlms_step(state, xv, d, cfg) : lms_step(state, xv, d, cfg.step);
    trace.e2.push_back(e * e);
    const Vector effective = cfg.transform ? Vector(*cfg.transform * state.w) : state.w;
    trace.misalignment.push_back((effective - plant).squaredNorm() / plant_energy);
  }
  return trace;
}

void write_trace_csv(std::ostream& out, const MseTrace& trace) {
  out << "k,e2,misalignment_db\n";
  char buf[64];
  auto put = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    out.write(buf, res.ptr - buf);
  };
  for (std::size_t k = 0; k < trace.e2.size(); ++k) {
    out << k << ',';
    put(trace.e2[k]);
    out << ',';
    put(trace.misalignment_db(k));
    out << '\n';
  }
}

}  // namespace precog::tdlms
