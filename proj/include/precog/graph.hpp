#pragma once

#include "precog/common.hpp"

#include <utility>
#include <vector>

namespace precog::graph {

struct Edge {
  int i = 0;  // smaller endpoint
  int j = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on n vertices. Edges are stored with i < j in
/// lexicographic order.
class Topology {
 public:
  Topology(int n, std::vector<Edge> edges);

  int vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t index) const;

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// All pairs with 0 < j - i <= band.
Topology banded_topology(int n, int band);
Topology full_topology(int n);

struct WeightedGraph {
  WeightedGraph(Topology topology, Vector weights);

  Topology topology;
  Vector w;  // one signed weight per edge
};

enum class IncidenceSign { PlusAtLower, PlusAtUpper };

/// n x |E|; column e has +1 and -1 at the endpoints of edge e.
Matrix incidence_matrix(const Topology& t, IncidenceSign sign = IncidenceSign::PlusAtLower);

/// L = B diag(w) B^T.
Matrix laplacian(const WeightedGraph& g);

/// dL/dw_i: +1 on both endpoint diagonals, -1 on the two off-diagonal slots.
Matrix theta(const WeightedGraph& g, std::size_t edge_index);
Matrix theta(const Topology& t, std::size_t edge_index);

/// Sum of |w| over incident edges; this is the one fed to log-degree penalties.
Vector degree_vector(const WeightedGraph& g);
/// Signed sum of incident weights (the diagonal of L).
Vector signed_degree_vector(const WeightedGraph& g);

}  // namespace precog::graph
