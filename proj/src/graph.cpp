#include "precog/graph.hpp"

#include <algorithm>
#include <set>

namespace precog::graph {

Topology::Topology(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "topology needs n >= 2, got " + std::to_string(n));
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges_) {
    if (!(0 <= e.i && e.i < e.j && e.j < n)) {
      throw Error(ErrorKind::InvalidInput,
                  "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") violates 0 <= i < j < n");
    }
    if (!seen.emplace(e.i, e.j).second) {
      throw Error(ErrorKind::InvalidInput, "duplicate edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")");
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
}

const Edge& Topology::edge(std::size_t index) const {
  if (index >= edges_.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "edge index " + std::to_string(index) + " >= " + std::to_string(edges_.size()));
  }
  return edges_[index];
}

Topology banded_topology(int n, int band) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "banded topology needs n >= 2, got " + std::to_string(n));
  if (band < 1) throw Error(ErrorKind::InvalidInput, "band must be >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n && j - i <= band; ++j) edges.push_back({i, j});
  }
  return Topology(n, std::move(edges));
}

Topology full_topology(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "full topology needs n >= 2, got " + std::to_string(n));
  return banded_topology(n, n - 1);
}

WeightedGraph::WeightedGraph(Topology t, Vector weights) : topology(std::move(t)), w(std::move(weights)) {
  if (static_cast<std::size_t>(w.size()) != topology.edge_count()) {
    throw Error(ErrorKind::DimensionMismatch, "weight vector length " + std::to_string(w.size()) +
                                                  " != edge count " + std::to_string(topology.edge_count()));
  }
  if (!w.allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite edge weight");
}

Matrix incidence_matrix(const Topology& t, IncidenceSign sign) {
  const double lower = sign == IncidenceSign::PlusAtLower ? 1.0 : -1.0;
  Matrix b = Matrix::Zero(t.vertex_count(), static_cast<Eigen::Index>(t.edge_count()));
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    const auto& edge = t.edges()[e];
    b(edge.i, static_cast<Eigen::Index>(e)) = lower;
    b(edge.j, static_cast<Eigen::Index>(e)) = -lower;
  }
  return b;
}

Matrix laplacian(const WeightedGraph& g) {
  const Matrix b = incidence_matrix(g.topology);
  return b * g.w.asDiagonal() * b.transpose();
}

Matrix theta(const Topology& t, std::size_t edge_index) {
  const auto& e = t.edge(edge_index);
  Matrix th = Matrix::Zero(t.vertex_count(), t.vertex_count());
  th(e.i, e.i) = 1.0;
  th(e.j, e.j) = 1.0;
  th(e.i, e.j) = -1.0;
  th(e.j, e.i) = -1.0;
  return th;
}

Matrix theta(const WeightedGraph& g, std::size_t edge_index) { return theta(g.topology, edge_index); }

Vector degree_vector(const WeightedGraph& g) {
  Vector d = Vector::Zero(g.topology.vertex_count());
  for (std::size_t e = 0; e < g.topology.edge_count(); ++e) {
    const auto& edge = g.topology.edges()[e];
    const double a = std::abs(g.w[static_cast<Eigen::Index>(e)]);
    d[edge.i] += a;
    d[edge.j] += a;
  }
  return d;
}

Vector signed_degree_vector(const WeightedGraph& g) {
  Vector d = Vector::Zero(g.topology.vertex_count());
  for (std::size_t e = 0; e < g.topology.edge_count(); ++e) {
    const auto& edge = g.topology.edges()[e];
    d[edge.i] += g.w[static_cast<Eigen::Index>(e)];
    d[edge.j] += g.w[static_cast<Eigen::Index>(e)];
  }
  return d;
}

}  // namespace precog::graph
