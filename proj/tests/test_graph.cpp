#include "doctest.h"

#include "oracles.hpp"
#include "precog/graph.hpp"
#include "precog/spectral.hpp"

using namespace precog;
using namespace precog::graph;

TEST_CASE("banded topology enumerates pairs within the band") {
  const auto t = banded_topology(4, 2);
  const std::vector<Edge> want{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
  CHECK(t.edges() == want);
  CHECK(t.edge_count() == 2 * 4 - 3);

  CHECK(banded_topology(2, 2).edges() == std::vector<Edge>{{0, 1}});
  CHECK(banded_topology(5, 4).edges() == full_topology(5).edges());
  CHECK(banded_topology(5, 4).edge_count() == 10);
  for (int n = 3; n <= 20; ++n) CHECK(banded_topology(n, 2).edge_count() == static_cast<std::size_t>(2 * n - 3));
}

TEST_CASE("full topology") {
  CHECK(full_topology(3).edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(full_topology(2).edges() == std::vector<Edge>{{0, 1}});
  CHECK(full_topology(10).edge_count() == 45);
}

TEST_CASE("topology errors") {
  CHECK_THROWS_AS(banded_topology(1, 2), Error);
  CHECK_THROWS_AS(full_topology(0), Error);
  CHECK_THROWS_AS(banded_topology(4, 0), Error);
  CHECK_THROWS_AS(Topology(3, {{0, 1}, {0, 1}}), Error);
  CHECK_THROWS_AS(Topology(3, {{1, 0}}), Error);
  CHECK_THROWS_AS(Topology(3, {{0, 3}}), Error);
  try {
    banded_topology(1, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDimension);
  }
  CHECK_THROWS_AS(WeightedGraph(full_topology(3), Vector::Ones(2)), Error);
  CHECK_THROWS_AS(WeightedGraph(full_topology(2), Vector::Constant(1, NAN)), Error);
}

TEST_CASE("incidence matrix columns") {
  const Matrix b1 = incidence_matrix(full_topology(2));
  CHECK(b1(0, 0) == 1.0);
  CHECK(b1(1, 0) == -1.0);

  const Matrix path = incidence_matrix(Topology(3, {{0, 1}, {1, 2}}));
  Matrix want(3, 2);
  want << 1, 0, -1, 1, 0, -1;
  CHECK(path == want);

  const Matrix b = incidence_matrix(banded_topology(7, 3));
  CHECK(b.colwise().sum().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laplacian small cases") {
  const Matrix l2 = laplacian(WeightedGraph(full_topology(2), Vector::Ones(1)));
  Matrix want2(2, 2);
  want2 << 1, -1, -1, 1;
  CHECK(l2 == want2);

  const Matrix l3 = laplacian(WeightedGraph(Topology(3, {{0, 1}, {1, 2}}), Vector::Ones(2)));
  Matrix want3(3, 3);
  want3 << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK(l3 == want3);
}

TEST_CASE("laplacian matches the elementwise construction on every graph up to n = 5") {
  std::mt19937_64 eng(11);
  std::normal_distribution<double> normal;
  for (int n = 2; n <= 5; ++n) {
    const auto all = full_topology(n).edges();
    const auto subsets = 1u << all.size();
    for (unsigned mask = 1; mask < subsets; ++mask) {
      std::vector<Edge> edges;
      for (std::size_t e = 0; e < all.size(); ++e)
        if (mask & (1u << e)) edges.push_back(all[e]);
      const Topology t(n, edges);
      Vector w(static_cast<Eigen::Index>(t.edge_count()));
      for (auto& v : w) v = normal(eng);
      const WeightedGraph g(t, w);
      const Matrix l = laplacian(g);
      CHECK((l - oracle::laplacian_by_definition(n, t.edges(), w)).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(asymmetry(l) == 0.0);
    }
  }
}

TEST_CASE("laplacian is PSD for nonnegative weights") {
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> uni(0.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = banded_topology(8, 2);
    Vector w(static_cast<Eigen::Index>(t.edge_count()));
    for (auto& v : w) v = uni(eng);
    const auto sp = spectral::sym_eig(laplacian(WeightedGraph(t, w)));
    CHECK(sp.gamma[0] >= -1e-10);
  }
}

TEST_CASE("theta has four entries and sums to the laplacian") {
  const auto t3 = Topology(3, {{0, 2}});
  const Matrix th = theta(t3, 0);
  CHECK((th.array() != 0.0).count() == 4);
  CHECK(th(0, 0) == 1.0);
  CHECK(th(2, 2) == 1.0);
  CHECK(th(0, 2) == -1.0);
  CHECK(th(2, 0) == -1.0);

  std::mt19937_64 eng(3);
  const auto t = banded_topology(6, 2);
  const WeightedGraph g(t, oracle::random_matrix(static_cast<int>(t.edge_count()), 1, eng));
  Matrix sum = Matrix::Zero(6, 6);
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    const Matrix te = theta(g, e);
    CHECK((te.array() != 0.0).count() == 4);
    CHECK(te.trace() == 2.0);
    CHECK(te.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    sum += g.w[static_cast<Eigen::Index>(e)] * te;
  }
  CHECK((sum - laplacian(g)).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK_THROWS_AS(theta(g, t.edge_count()), Error);
}

TEST_CASE("theta does not depend on the incidence sign convention") {
  const auto t = banded_topology(5, 2);
  const Matrix lower = incidence_matrix(t, IncidenceSign::PlusAtLower);
  const Matrix upper = incidence_matrix(t, IncidenceSign::PlusAtUpper);
  CHECK(lower == -upper);
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    Vector unit = Vector::Zero(static_cast<Eigen::Index>(t.edge_count()));
    unit[static_cast<Eigen::Index>(e)] = 1.0;
    const Matrix flipped = upper * unit.asDiagonal() * upper.transpose();
    CHECK(flipped == theta(t, e));
  }
}

TEST_CASE("degree vectors") {
  CHECK(degree_vector(WeightedGraph(full_topology(2), Vector::Constant(1, 3.0))) == Vector::Constant(2, 3.0));
  Vector w(2);
  w << 1, 2;
  const WeightedGraph path(Topology(3, {{0, 1}, {1, 2}}), w);
  Vector want(3);
  want << 1, 3, 2;
  CHECK(degree_vector(path) == want);

  const WeightedGraph neg(full_topology(2), Vector::Constant(1, -1.0));
  CHECK(degree_vector(neg) == Vector::Ones(2));
  CHECK(signed_degree_vector(neg) == -Vector::Ones(2));
  CHECK(signed_degree_vector(neg) == laplacian(neg).diagonal());
}
