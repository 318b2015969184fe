#include "precog/precog.hpp"

#include "precog/rng.hpp"

#include <cmath>

namespace precog {

using graph::WeightedGraph;
using spectral::SpectralPair;

const char* to_string(GradientMode mode) {
  return mode == GradientMode::PinvChain ? "pinv-chain" : "perturbation";
}

GradientMode parse_gradient_mode(const std::string& s) {
  if (s == "pinv-chain") return GradientMode::PinvChain;
  if (s == "perturbation") return GradientMode::Perturbation;
  throw Error(ErrorKind::InvalidInput, "unknown gradient mode '" + s + "'");
}

const char* to_string(AmbientFormula formula) {
  return formula == AmbientFormula::Canonical ? "canonical" : "expanded";
}

AmbientFormula parse_ambient_formula(const std::string& s) {
  if (s == "canonical") return AmbientFormula::Canonical;
  if (s == "expanded") return AmbientFormula::Expanded;
  throw Error(ErrorKind::InvalidInput, "unknown gradient formula '" + s + "'");
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::MaxIter: return "max-iter";
    case StopReason::Tolerance: return "tolerance";
    case StopReason::BandReached: return "band-reached";
  }
  return "unknown";
}

void HyperParams::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); };
  if (!(mu > 0.0 && mu < 1.0)) fail("mu must lie in (0, 1)");
  if (!(beta >= 0.0)) fail("beta must be >= 0");
  if (!(eps1 >= 0.0)) fail("eps1 must be >= 0");
  if (!(eps2 >= 0.0 && eps2 < 1.0)) fail("eps2 must lie in [0, 1)");
  if (!(alpha1 >= 0.0 && alpha2 >= 0.0)) fail("alpha1 and alpha2 must be >= 0");
  if (max_iter < 1) fail("max_iter must be positive");
  if (!(tol > 0.0)) fail("tol must be > 0");
  if (!(degeneracy_gap > 0.0)) fail("degeneracy_gap must be > 0");
}

namespace {

void require_same_shape(const Matrix& r, const Matrix& u, const char* what) {
  if (r.rows() != r.cols() || u.rows() != r.rows() || u.cols() != r.cols()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": R and U must be square of equal size");
  }
}

// Theta_i is supported on one edge; recover its endpoints.
std::pair<Eigen::Index, Eigen::Index> theta_support(const Matrix& theta_i) {
  Eigen::Index p = -1;
  Eigen::Index q = -1;
  for (Eigen::Index i = 0; i < theta_i.rows(); ++i) {
    if (theta_i(i, i) != 0.0) {
      if (p < 0) {
        p = i;
      } else if (q < 0) {
        q = i;
      }
    }
  }
  return {p, q};
}

double trace_against_edge(const Matrix& s, Eigen::Index p, Eigen::Index q) {
  return s(p, p) + s(q, q) - s(p, q) - s(q, p);
}

Matrix ambient_gradient(const Matrix& r, const Matrix& u, const HyperParams& hp, const std::optional<Vector>& signal) {
  Matrix grad = grad_E_wrt_U(r, u, hp.eps1, hp.eps2, AmbientFormula::Canonical);
  if (signal && hp.alpha2 > 0.0) {
    const Vector coeffs = u.transpose() * *signal;
    const Vector sign = coeffs.unaryExpr([](double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); });
    grad += hp.alpha2 * (*signal) * sign.transpose();
  }
  return grad;
}

void check_signal(const Matrix& r, const std::optional<Vector>& signal) {
  if (signal && signal->size() != r.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "signal length must equal the matrix dimension");
  }
}

}  // namespace

double cost_E(const Matrix& r, const Matrix& u, double eps1, double eps2) {
  require_same_shape(r, u, "cost_E");
  const Matrix g = u.transpose() * r * u;
  const Matrix d = g.diagonal().asDiagonal();
  const double s_plus = 1.0 + eps1;
  const double s_minus = 1.0 - eps2;
  return (g - s_plus * d).squaredNorm() + (g - s_minus * d).squaredNorm();
}

double cost_EN(const WeightedGraph& g, const Matrix& r, const HyperParams& hp) {
  const SpectralPair sp = spectral::sym_eig(graph::laplacian(g));
  return cost_E(r, sp.u, hp.eps1, hp.eps2) + hp.beta * (g.w.squaredNorm() - 1.0);
}

double cost_sparse(const WeightedGraph& g, const Matrix& r, const Vector& x, const HyperParams& hp) {
  const Vector degree = graph::degree_vector(g);
  for (Eigen::Index v = 0; v < degree.size(); ++v) {
    if (!(degree[v] > 0.0)) {
      throw Error(ErrorKind::DisconnectedVertex, "vertex " + std::to_string(v + 1) + " has zero degree");
    }
  }
  check_signal(r, x);
  const SpectralPair sp = spectral::sym_eig(graph::laplacian(g));
  const double en = cost_E(r, sp.u, hp.eps1, hp.eps2) + hp.beta * (g.w.squaredNorm() - 1.0);
  return en - hp.alpha1 * degree.array().log().sum() + hp.alpha2 * (sp.u.transpose() * x).lpNorm<1>();
}

int l0_count(const Matrix& u, const Vector& x) {
  return static_cast<int>(((u.transpose() * x).array().abs() > 1e-8).count());
}

Matrix grad_E_wrt_U(const Matrix& r, const Matrix& u, double eps1, double eps2, AmbientFormula formula) {
  require_same_shape(r, u, "grad_E_wrt_U");
  const Matrix g = u.transpose() * r * u;
  const Matrix d = g.diagonal().asDiagonal();
  const auto n = r.rows();
  switch (formula) {
    case AmbientFormula::Canonical:
      // E = 2||G||^2 - (2 - eps1^2 - eps2^2) ||G o I||^2, differentiated without
      // assuming U U^T = I.
      return 4.0 * r * u * (2.0 * g - (2.0 - eps1 * eps1 - eps2 * eps2) * d);
    case AmbientFormula::Expanded: {
      const double sq = (1.0 + eps1) * (1.0 + eps1) + (1.0 - eps2) * (1.0 - eps2);
      const Matrix inner = 2.0 * r - 2.0 * (2.0 - eps2 - eps2) * Matrix::Identity(n, n) - sq * d;
      return 2.0 * inner * r * u;
    }
  }
  throw Error(ErrorKind::InvalidInput, "unknown gradient formula");
}

Matrix dL_du(const SpectralPair& sp, int k, int l) {
  const auto n = sp.u.rows();
  if (k < 0 || l < 0 || k >= n || l >= n) {
    throw Error(ErrorKind::IndexOutOfRange, "dL_du index (" + std::to_string(k) + "," + std::to_string(l) + ")");
  }
  // U Gamma J^{kl}: column l receives gamma_k u_k. J^{lk} Gamma U^T: row l receives gamma_k u_k^T.
  Matrix out = Matrix::Zero(n, n);
  const Vector col = sp.gamma[k] * sp.u.col(k);
  out.col(l) += col;
  out.row(l) += col.transpose();
  return out;
}

Matrix du_dw_pinv(const SpectralPair& sp, const Matrix& theta_i) {
  const auto n = sp.u.rows();
  if (theta_i.rows() != n || theta_i.cols() != n) throw Error(ErrorKind::DimensionMismatch, "du_dw_pinv: Theta shape");
  Matrix out = Matrix::Zero(n, n);
  const auto [p, q] = theta_support(theta_i);
  if (p < 0 || q < 0) return out;
  const double scale = theta_i(p, p);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const Matrix m = spectral::pinv(dL_du(sp, k, l)).transpose();
      out(k, l) = scale * trace_against_edge(m, p, q);
    }
  }
  return out;
}

Matrix du_dw_perturbation(const SpectralPair& sp, const Matrix& theta_i, double degeneracy_gap) {
  const auto n = sp.u.rows();
  if (theta_i.rows() != n || theta_i.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "du_dw_perturbation: Theta shape");
  }
  if (n > 1 && sp.min_gap < degeneracy_gap) {
    throw Error(ErrorKind::DegenerateSpectrum, "eigen-gap " + std::to_string(sp.min_gap) + " below " +
                                                   std::to_string(degeneracy_gap));
  }
  const Matrix coupling = sp.u.transpose() * theta_i * sp.u;
  Matrix coeff = Matrix::Zero(n, n);  // coeff(b, a) multiplies u_b in column a
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      if (a != b) coeff(b, a) = coupling(b, a) / (sp.gamma[a] - sp.gamma[b]);
    }
  }
  return sp.u * coeff;
}

Vector grad_E_wrt_w(const WeightedGraph& g, const SpectralPair& sp, const Matrix& r, const HyperParams& hp,
                    const std::optional<Vector>& signal) {
  check_signal(r, signal);
  const auto n = sp.u.rows();
  const auto edges = g.topology.edge_count();
  const Matrix ambient = ambient_gradient(r, sp.u, hp, signal);
  Vector grad = Vector::Zero(static_cast<Eigen::Index>(edges));

  if (hp.gradient_mode == GradientMode::Perturbation) {
    if (n > 1 && sp.min_gap < hp.degeneracy_gap) {
      throw Error(ErrorKind::DegenerateSpectrum, "eigen-gap " + std::to_string(sp.min_gap) + " below " +
                                                     std::to_string(hp.degeneracy_gap));
    }
    // Tr(A^T dU/dw_i) = e^T (U K U^T) e with e = e_p - e_q and
    // K(b,a) = (u_b^T A_a) / (gamma_a - gamma_b).
    const Matrix c = sp.u.transpose() * ambient;
    Matrix k = Matrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        if (a != b) k(b, a) = c(b, a) / (sp.gamma[a] - sp.gamma[b]);
      }
    }
    const Matrix s = sp.u * k * sp.u.transpose();
    for (std::size_t e = 0; e < edges; ++e) {
      const auto& edge = g.topology.edges()[e];
      grad[static_cast<Eigen::Index>(e)] = trace_against_edge(s, edge.i, edge.j);
    }
  } else {
    // The pseudoinverses do not depend on the edge; compute each once.
    std::vector<Matrix> m(static_cast<std::size_t>(n * n));
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) m[static_cast<std::size_t>(k * n + l)] = spectral::pinv(dL_du(sp, k, l)).transpose();
    }
    for (std::size_t e = 0; e < edges; ++e) {
      const auto& edge = g.topology.edges()[e];
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          acc += ambient(k, l) * trace_against_edge(m[static_cast<std::size_t>(k * n + l)], edge.i, edge.j);
        }
      }
      grad[static_cast<Eigen::Index>(e)] = acc;
    }
  }

  if (signal && hp.alpha1 > 0.0) {
    const Vector degree = graph::degree_vector(g);
    for (std::size_t e = 0; e < edges; ++e) {
      const auto& edge = g.topology.edges()[e];
      const double w = g.w[static_cast<Eigen::Index>(e)];
      const double sign = static_cast<double>((w > 0.0) - (w < 0.0));
      grad[static_cast<Eigen::Index>(e)] -= hp.alpha1 * sign * (1.0 / degree[edge.i] + 1.0 / degree[edge.j]);
    }
  }
  return grad;
}

Vector grad_EN_wrt_w(const WeightedGraph& g, const Matrix& r, const HyperParams& hp,
                     const std::optional<Vector>& signal) {
  const SpectralPair sp = spectral::sym_eig(graph::laplacian(g));
  return grad_E_wrt_w(g, sp, r, hp, signal) + 2.0 * hp.beta * g.w;
}

namespace {

bool within_band(const Matrix& r, const Matrix& u, double eps1, double eps2) {
  const Matrix rt = u.transpose() * r * u;
  const Matrix s = spectral::power_normalize(0.5 * (rt + rt.transpose())).s;
  const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(s, Eigen::EigenvaluesOnly).eigenvalues();
  return ev[0] >= 1.0 - eps2 && ev[ev.size() - 1] <= 1.0 + eps1;
}

}  // namespace

PrecogResult optimize(const Matrix& r, const graph::Topology& topology, const HyperParams& hp,
                      const std::optional<Vector>& signal) {
  hp.validate();
  if (r.rows() != r.cols() || r.rows() != topology.vertex_count()) {
    throw Error(ErrorKind::DimensionMismatch, "optimize: R must be n x n for an n-vertex topology");
  }
  check_signal(r, signal);
  PrecogResult result;
  result.cond_reference = spectral::cond_spd(spectral::power_normalize(r).s);  // also rejects non-SPD R

  const bool sparse = signal && (hp.alpha1 > 0.0 || hp.alpha2 > 0.0);
  const auto edges = static_cast<Eigen::Index>(topology.edge_count());

  auto init = make_engine(hp.seed, Stream::WeightInit);
  auto jitter_rng = make_engine(hp.seed, Stream::Jitter);
  std::normal_distribution<double> normal;
  Vector w(edges);
  for (Eigen::Index e = 0; e < edges; ++e) w[e] = normal(init);

  constexpr int kMaxConsecutiveJitters = 5;
  int consecutive_jitters = 0;
  std::optional<double> prev_cost;
  result.cond_best = std::numeric_limits<double>::infinity();

  for (int t = 0; t < hp.max_iter; ++t) {
    WeightedGraph g(topology, w);
    SpectralPair sp = spectral::sym_eig(graph::laplacian(g));
    while (hp.gradient_mode == GradientMode::Perturbation && sp.min_gap < hp.degeneracy_gap) {
      if (++consecutive_jitters > kMaxConsecutiveJitters) {
        throw Error(ErrorKind::DegenerateSpectrum,
                    "iteration " + std::to_string(t) + ": spectrum stayed degenerate after jitter");
      }
      ++result.jitters;
      const double scale = 1e-6 * (w.norm() > 0.0 ? w.norm() : 1.0);
      for (Eigen::Index e = 0; e < edges; ++e) w[e] += scale * normal(jitter_rng);
      g = WeightedGraph(topology, w);
      sp = spectral::sym_eig(graph::laplacian(g));
    }
    consecutive_jitters = 0;

    result.max_orthonormality_defect = std::max(result.max_orthonormality_defect, orthonormality_defect(sp.u));
    double cost = cost_E(r, sp.u, hp.eps1, hp.eps2) + hp.beta * (w.squaredNorm() - 1.0);
    if (sparse) {
      const Vector degree = graph::degree_vector(g);
      if ((degree.array() <= 0.0).any()) {
        throw Error(ErrorKind::DisconnectedVertex, "iteration " + std::to_string(t) + ": zero-degree vertex");
      }
      cost += -hp.alpha1 * degree.array().log().sum() + hp.alpha2 * (sp.u.transpose() * *signal).lpNorm<1>();
    }
    const double cond = spectral::split_preconditioned_cond(r, sp.u);
    if (!std::isfinite(cost) || !std::isfinite(cond)) {
      throw Error(ErrorKind::Divergence, "non-finite cost at iteration " + std::to_string(t));
    }

    const Vector grad = grad_E_wrt_w(g, sp, r, hp, sparse ? signal : std::nullopt);
    if (!grad.allFinite()) throw Error(ErrorKind::Divergence, "non-finite gradient at iteration " + std::to_string(t));
    result.history.push_back({t, cost, cond, (grad + 2.0 * hp.beta * w).norm()});

    if (cond < result.cond_best) {
      result.cond_best = cond;
      result.u = sp.u;
      result.w_best = w;
      result.best_iteration = t;
      if (signal) result.l0_best = l0_count(sp.u, *signal);
    }

    if (hp.stop_on_band && within_band(r, sp.u, hp.eps1, hp.eps2)) {
      result.converged = true;
      result.reason = StopReason::BandReached;
      break;
    }
    if (prev_cost && std::abs(cost - *prev_cost) < hp.tol) {
      result.converged = true;
      result.reason = StopReason::Tolerance;
      break;
    }
    prev_cost = cost;

    w = w * (1.0 - 2.0 * hp.beta) - hp.mu * grad;
  }
  result.w_final = w;
  return result;
}

}  // namespace precog
