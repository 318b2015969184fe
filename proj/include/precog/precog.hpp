#pragma once

#include "precog/common.hpp"
#include "precog/graph.hpp"
#include "precog/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace precog {

/// How dU/dw is obtained inside the weight gradient.
enum class GradientMode {
  /// u_kl derivative via the pseudoinverse of dL/du_kl, traced against Theta_i.
  PinvChain,
  /// First-order eigenvector perturbation; matches finite differences.
  Perturbation,
};

/// Which closed form is used for dE/dU.
enum class AmbientFormula {
  Canonical,
  /// Alternative expanded closed form, kept for comparison runs only.
  Expanded,
};

const char* to_string(GradientMode mode);
GradientMode parse_gradient_mode(const std::string& s);
const char* to_string(AmbientFormula formula);
AmbientFormula parse_ambient_formula(const std::string& s);

struct HyperParams {
  double mu = 1e-3;
  double beta = 1e-3;
  double eps1 = 0.1;
  double eps2 = 0.1;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  int max_iter = 300;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  GradientMode gradient_mode = GradientMode::Perturbation;
  double degeneracy_gap = 1e-8;
  /// Exit early once every normalized eigenvalue lies in [1 - eps2, 1 + eps1].
  bool stop_on_band = true;

  void validate() const;
};

/// ||G - s+ (G o I)||_F^2 + ||G - s- (G o I)||_F^2 with G = U^T R U,
/// s+ = 1 + eps1, s- = 1 - eps2.
double cost_E(const Matrix& r, const Matrix& u, double eps1, double eps2);

/// cost_E at the Laplacian eigenbasis plus beta (w^T w - 1).
double cost_EN(const graph::WeightedGraph& g, const Matrix& r, const HyperParams& hp);

/// cost_EN - alpha1 * sum(log(degree)) + alpha2 * ||U^T x||_1.
double cost_sparse(const graph::WeightedGraph& g, const Matrix& r, const Vector& x, const HyperParams& hp);

/// Number of entries of U^T x with magnitude above 1e-8.
int l0_count(const Matrix& u, const Vector& x);

Matrix grad_E_wrt_U(const Matrix& r, const Matrix& u, double eps1, double eps2,
                    AmbientFormula formula = AmbientFormula::Canonical);

/// dL/du_kl = U Gamma J^{kl} + J^{lk} Gamma U^T.
Matrix dL_du(const spectral::SpectralPair& sp, int k, int l);

/// Entry (k,l) = Tr(pinv(dL/du_kl)^T Theta_i), using the four-entry shortcut
/// for Theta_i supported on {p, q}.
Matrix du_dw_pinv(const spectral::SpectralPair& sp, const Matrix& theta_i);

/// Column a: sum_{b != a} (u_b^T Theta u_a) / (gamma_a - gamma_b) u_b.
Matrix du_dw_perturbation(const spectral::SpectralPair& sp, const Matrix& theta_i, double degeneracy_gap);

/// dE_N/dw including the 2 beta w term. When a signal is given and alpha1 or
/// alpha2 is nonzero the sparse-cost terms are included as well.
Vector grad_EN_wrt_w(const graph::WeightedGraph& g, const Matrix& r, const HyperParams& hp,
                     const std::optional<Vector>& signal = std::nullopt);

/// Same as above but reuses an existing decomposition of the Laplacian.
/// Returns only the data term (no 2 beta w).
Vector grad_E_wrt_w(const graph::WeightedGraph& g, const spectral::SpectralPair& sp, const Matrix& r,
                    const HyperParams& hp, const std::optional<Vector>& signal = std::nullopt);

struct IterationRecord {
  int t = 0;
  double cost = 0.0;
  double cond = 0.0;  // split-preconditioned condition number
  double grad_norm = 0.0;
};

enum class StopReason { MaxIter, Tolerance, BandReached };
const char* to_string(StopReason reason);

struct PrecogResult {
  Matrix u;  // best iterate by split-preconditioned condition number
  Vector w_final;
  Vector w_best;
  int best_iteration = 0;
  double cond_best = 0.0;
  double cond_reference = 0.0;  // power-normalized condition of R itself
  std::vector<IterationRecord> history;
  bool converged = false;
  StopReason reason = StopReason::MaxIter;
  int jitters = 0;
  double max_orthonormality_defect = 0.0;  // over every iterate
  int l0_best = -1;                        // only when a signal is supplied
};

/// Gradient descent over the edge weights of `topology`.
PrecogResult optimize(const Matrix& r, const graph::Topology& topology, const HyperParams& hp,
                      const std::optional<Vector>& signal = std::nullopt);

}  // namespace precog
