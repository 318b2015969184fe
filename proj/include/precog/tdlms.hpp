#pragma once

#include "precog/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace precog::tdlms {

struct FilterConfig {
  int taps = 16;
  double step = 0.01;
  double gamma_pow = 0.99;  // power-estimate smoothing
  double delta_pow = 1e-6;  // power floor
  std::optional<Matrix> transform;  // absent: plain LMS

  void validate() const;
};

struct FilterState {
  Vector w;      // adaptive weights (transform domain for TDLMS)
  Vector power;  // per-bin power estimates, start at 1

  static FilterState zeros(int taps);
};

/// e = d - w^T x; w += step e x.
double lms_step(FilterState& state, const Vector& x, double d, double step);

/// v = U^T x; p = gamma p + (1 - gamma) v^2; e = d - w^T v; w_i += step e v_i / (p_i + delta).
double tdlms_step(FilterState& state, const Vector& x, double d, const FilterConfig& cfg);

enum class InputFamily { White, Ar1, Ar2 };

struct InputSpec {
  InputFamily family = InputFamily::White;
  double rho1 = 0.0;
  double rho2 = 0.0;
};

struct MseTrace {
  std::vector<double> e2;
  std::vector<double> misalignment;  // ||w_eff - h||^2 / ||h||^2, linear

  double misalignment_db(std::size_t k) const;
  /// First iteration (zero-based) whose misalignment is at or below `threshold_db`.
  std::optional<std::size_t> iterations_to_threshold(double threshold_db) const;
};

/// Identifies `plant` from input drawn per `input`, with measurement noise at
/// `snr_db` relative to the clean plant output (infinity: noise-free).
MseTrace system_id_experiment(const Vector& plant, const InputSpec& input, double snr_db, const FilterConfig& cfg,
                              std::size_t run_len, std::uint64_t seed);

/// Standard-normal FIR coefficients.
Vector random_plant(int taps, std::uint64_t seed);

/// CSV with header k,e2,misalignment_db.
void write_trace_csv(std::ostream& out, const MseTrace& trace);

}  // namespace precog::tdlms
