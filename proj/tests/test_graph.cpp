#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "kursync/graph.hpp"
#include "kursync/rng.hpp"
#include "support.hpp"

using namespace kursync;
using kursync::testsupport::complete_graph;
using kursync::testsupport::random_connected_graph;

TEST_CASE("build_graph accepts the smallest connected graph") {
  const Graph g = build_graph(2, {{1, 2}});
  CHECK(g.node_count() == 2);
  CHECK(g.degrees() == std::vector<int>{1, 1});
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
}

TEST_CASE("build_graph rejects invalid inputs") {
  CHECK_THROWS_WITH_AS(build_graph(3, {{1, 2}}),
                       "L undefined for disconnected graph",
                       std::invalid_argument);
  CHECK_THROWS_AS(build_graph(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph(65, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph(3, {{1, 1}, {2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph(3, {{1, 2}, {2, 1}, {2, 3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_graph(3, {{1, 4}, {2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph(3, {{0, 2}, {2, 3}}), std::invalid_argument);
}

TEST_CASE("build_graph normalizes edge order") {
  const Graph g = build_graph(4, {{4, 1}, {3, 2}, {2, 1}, {3, 4}});
  const std::vector<std::pair<int, int>> expected{{1, 2}, {1, 4}, {2, 3}, {3, 4}};
  CHECK(g.edges() == expected);
  for (int d : g.degrees()) CHECK(d == 2);
}

TEST_CASE("make_topology produces the documented families") {
  const Graph star = make_topology(Topology::star_tree, 4);
  CHECK(star.degrees() == std::vector<int>{3, 1, 1, 1});

  const Graph chain = make_topology(Topology::chain, 3);
  CHECK(chain.edges() == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});

  const Graph ring3 = make_topology(Topology::ring, 3);
  const Graph k3 = complete_graph(3);
  CHECK(ring3.edges() == k3.edges());

  CHECK_THROWS_AS(make_topology(Topology::ring, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_topology(Topology::chain, 1), std::invalid_argument);
}

TEST_CASE("topology names round-trip") {
  for (Topology t :
       {Topology::chain, Topology::ring, Topology::star_tree}) {
    CHECK(topology_from_name(topology_name(t)) == t);
  }
  CHECK_THROWS_AS(topology_from_name("torus"), std::invalid_argument);
}

TEST_CASE("all_pairs_distances matches hand counts") {
  const IntMatrix chain_dist = all_pairs_distances(make_topology(Topology::chain, 3));
  CHECK(chain_dist(0, 2) == 2);

  const IntMatrix ring_dist = all_pairs_distances(make_topology(Topology::ring, 4));
  CHECK(ring_dist(0, 2) == 2);
  CHECK(ring_dist(0, 1) == 1);

  const IntMatrix star_dist = all_pairs_distances(make_topology(Topology::star_tree, 5));
  for (int i = 1; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) CHECK(star_dist(i, j) == 2);
  }
}

TEST_CASE("connectivity constants match closed forms") {
  CHECK(connectivity_L(complete_graph(4)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(connectivity_L(make_topology(Topology::chain, 3)) ==
        doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(connectivity_L(make_topology(Topology::ring, 4)) ==
        doctest::Approx(1.0 / 5).epsilon(1e-14));

  CHECK(connectivity_Lstar(complete_graph(4)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(connectivity_Lstar(make_topology(Topology::chain, 3)) ==
        doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(connectivity_Lstar(make_topology(Topology::ring, 4)) ==
        doctest::Approx(1.0 / 5).epsilon(1e-14));
}

TEST_CASE("algebraic connectivity matches closed forms") {
  CHECK(algebraic_connectivity(complete_graph(3)) ==
        doctest::Approx(3.0).epsilon(1e-10));
  CHECK(algebraic_connectivity(make_topology(Topology::chain, 3)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(algebraic_connectivity(make_topology(Topology::ring, 4)) ==
        doctest::Approx(2.0).epsilon(1e-10));
  for (int n = 3; n <= 8; ++n) {
    CHECK(algebraic_connectivity(complete_graph(n)) ==
          doctest::Approx(static_cast<Real>(n)).epsilon(1e-10));
  }
  // Path closed form 2(1 - cos(pi/n)).
  for (int n = 2; n <= 10; ++n) {
    CHECK(algebraic_connectivity(make_topology(Topology::chain, n)) ==
          doctest::Approx(2 * (1 - std::cos(std::numbers::pi / n)))
              .epsilon(1e-10));
  }
}

TEST_CASE("pairwise_difference_norm matches direct arithmetic") {
  Vector two(2);
  two << 1, -1;
  CHECK(pairwise_difference_norm(two) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK(pairwise_difference_norm(Vector::Constant(5, 3.25)) == 0.0);

  Vector three(3);
  three << 1, 0, -1;
  CHECK(pairwise_difference_norm(three) ==
        doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));

  Vector one(1);
  one << 2;
  CHECK_THROWS_AS(pairwise_difference_norm(one), std::invalid_argument);
}

TEST_CASE("distance matrices behave metrically on random connected graphs") {
  SplitMix64 rng(0x6772617068ULL);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 3 + static_cast<int>(rng.next() % 8);
    const Graph g = random_connected_graph(n, rng);
    const IntMatrix dist = all_pairs_distances(g);
    for (int i = 0; i < n; ++i) {
      REQUIRE(dist(i, i) == 0);
      for (int j = 0; j < n; ++j) {
        REQUIRE(dist(i, j) == dist(j, i));
        REQUIRE(dist(i, j) >= (i == j ? 0 : 1));
        for (int k = 0; k < n; ++k) {
          REQUIRE(dist(i, j) <= dist(i, k) + dist(k, j));
        }
      }
    }
  }
}

TEST_CASE("connectivity constants lie in (0,1], hitting 1 exactly iff complete") {
  SplitMix64 rng(0x4c737461ULL);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng.next() % 8);
    const Graph g = random_connected_graph(n, rng, 0.5);
    const Real L = connectivity_L(g);
    const Real Lstar = connectivity_Lstar(g);
    REQUIRE(L > 0);
    REQUIRE(L <= 1);
    REQUIRE(Lstar > 0);
    REQUIRE(Lstar <= 1);
    if (g.is_complete()) {
      REQUIRE(L == 1.0);
      REQUIRE(Lstar == 1.0);
    } else {
      REQUIRE(L < 1.0);
      REQUIRE(Lstar < 1.0);
    }
    REQUIRE(algebraic_connectivity(g) > 0);
  }
}

TEST_CASE("zero-sum vectors satisfy the pairwise-norm identity") {
  SplitMix64 rng(0x7a65726fULL);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 9);
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = rng.uniform(-2.0, 2.0);
    x.array() -= x.mean();
    const Real lhs = pairwise_difference_norm(x);
    const Real rhs = std::sqrt(static_cast<Real>(n) * x.squaredNorm());
    REQUIRE(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("graph_constants agrees with the individual operations") {
  SplitMix64 rng(0x636f6e73ULL);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng.next() % 8);
    const Graph g = random_connected_graph(n, rng);
    const GraphConstants c = graph_constants(g);
    CHECK(c.L == doctest::Approx(connectivity_L(g)).epsilon(1e-14));
    CHECK(c.Lstar == doctest::Approx(connectivity_Lstar(g)).epsilon(1e-14));
    CHECK(c.lambda2 ==
          doctest::Approx(algebraic_connectivity(g)).epsilon(1e-12));
    CHECK(c.min_degree == g.min_degree());
    CHECK((c.dist - all_pairs_distances(g)).cwiseAbs().maxCoeff() == 0);
    CHECK(c.diameter == c.dist.maxCoeff());
  }
}
