#include <doctest.h>

#include "mmcp/graph.hpp"
#include "test_util.hpp"

using namespace mmcp;
using namespace testutil;

TEST_CASE("build_graph constructs a path and sorts adjacency") {
  const Graph g = build_graph(3, {{1, 2, 1.0}, {0, 1, 1.0}});
  CHECK(g.n == 3);
  CHECK(g.m() == 2);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(g.adj[1][0].to == 0);
  CHECK(g.adj[1][1].to == 2);
  CHECK(g.total_weight() == doctest::Approx(2.0));
}

TEST_CASE("build_graph drops self loops and duplicates, first weight wins") {
  const Graph g = build_graph(3, {{0, 1, 2.0}, {1, 1, 5.0}, {1, 0, 7.0}, {1, 2, 3.0}});
  CHECK(g.m() == 2);
  CHECK(g.edges[0].w == doctest::Approx(2.0));  // duplicate (1,0,7) ignored
  CHECK(g.edges[1].w == doctest::Approx(3.0));
}

TEST_CASE("build_graph rejects invalid input") {
  CHECK_THROWS_AS(build_graph(0, {}), EmptyGraph);
  CHECK_THROWS_AS(build_graph(2, {{0, 2, 1.0}}), VertexOutOfRange);
  CHECK_THROWS_AS(build_graph(2, {{0, -1, 1.0}}), VertexOutOfRange);
  CHECK_THROWS_AS(build_graph(2, {{0, 1, 0.0}}), NonpositiveWeight);
  CHECK_THROWS_AS(build_graph(2, {{0, 1, -2.0}}), NonpositiveWeight);
  CHECK_THROWS_AS(build_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}}), DisconnectedInput);
  CHECK_THROWS_AS(build_graph(2, {}), DisconnectedInput);
}

TEST_CASE("single vertex graph is connected and empty") {
  const Graph g = build_graph(1, {});
  CHECK(g.n == 1);
  CHECK(g.m() == 0);
}

TEST_CASE("cut_value on K4 and a weighted triangle") {
  const Graph k4 = complete_graph(4);
  CHECK(cut_value(k4, {0, 0, 1, 1}) == doctest::Approx(4.0));
  CHECK(cut_value(k4, {0, 1, 1, 1}) == doctest::Approx(3.0));
  CHECK(cut_value(k4, {0, 0, 0, 0}) == doctest::Approx(0.0));

  const Graph tri = build_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  CHECK(cut_value(tri, {1, 0, 0}) == doctest::Approx(4.0));
  CHECK(cut_value(tri, {0, 0, 1}) == doctest::Approx(5.0));
}

TEST_CASE("is_minimal_cut requires two nonempty connected sides") {
  const Graph c4 = cycle_graph(4);
  CHECK(is_minimal_cut(c4, {0, 0, 1, 1}));
  CHECK(is_minimal_cut(c4, {0, 1, 1, 1}));
  CHECK_FALSE(is_minimal_cut(c4, {0, 1, 0, 1}));  // both sides disconnected
  CHECK_FALSE(is_minimal_cut(c4, {0, 0, 0, 0}));  // empty side
  CHECK_FALSE(is_minimal_cut(c4, {1, 1, 1, 1}));

  const Graph p4 = path_graph(4);
  CHECK(is_minimal_cut(p4, {0, 0, 1, 1}));
  CHECK_FALSE(is_minimal_cut(p4, {0, 1, 1, 0}));  // side {0,3} is disconnected
}

TEST_CASE("connected_components labels induced subgraphs") {
  const Graph c4 = cycle_graph(4);
  const ComponentLabeling whole = connected_components(c4);
  CHECK(whole.count == 1);

  const ComponentLabeling induced = connected_components(c4, {1, 0, 1, 0});
  CHECK(induced.count == 2);  // vertices 0 and 2 are not adjacent in C4
  CHECK(induced.comp[0] >= 0);
  CHECK(induced.comp[1] == -1);
  CHECK(induced.comp[0] != induced.comp[2]);
}

TEST_CASE("agreement_components counts label-respecting components") {
  const Graph c4 = cycle_graph(4);
  CHECK(agreement_components(c4, {0, 0, 1, 1}).count == 2);
  CHECK(agreement_components(c4, {0, 1, 0, 1}).count == 4);
  CHECK(agreement_components(c4, {0, 0, 0, 0}).count == 1);
}

TEST_CASE("make_solution recomputes value and feasibility") {
  const Graph c4 = cycle_graph(4);
  const Solution s = make_solution(c4, {0, 0, 1, 1}, Provenance::BruteForce);
  CHECK(s.cut_value == doctest::Approx(2.0));
  CHECK(s.feasible);
  const Solution bad = make_solution(c4, {0, 1, 0, 1}, Provenance::BruteForce);
  CHECK(bad.cut_value == doctest::Approx(4.0));
  CHECK_FALSE(bad.feasible);
}

TEST_CASE("crossing_edges lists crossing edges ascending by index") {
  const Graph c4 = cycle_graph(4);
  const auto xs = crossing_edges(c4, {0, 0, 1, 1});
  REQUIRE(xs.size() == 2);
  CHECK(xs[0].u == 1);
  CHECK(xs[0].v == 2);
  CHECK(xs[1].u == 0);  // edge (3,0) is stored as (0,3)
  CHECK(xs[1].v == 3);
}

TEST_CASE("complement symmetry: cut value and feasibility are label-swap invariant") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_connected_graph(8, 14, 900 + seed);
    mmcp::Rng rng(seed);
    Assignment a(8, 0);
    for (auto& x : a) x = static_cast<std::uint8_t>(rng.next_below(2));
    const Assignment b = complement(a);
    CHECK(cut_value(g, a) == doctest::Approx(cut_value(g, b)));
    CHECK(is_minimal_cut(g, a) == is_minimal_cut(g, b));
  }
}

TEST_CASE("agreement component count 2 is exactly minimal-cut feasibility") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_connected_graph(7, 12, 7000 + seed);
    for (std::uint64_t mask = 0; mask < (1ULL << 7); ++mask) {
      Assignment a(7, 0);
      for (int v = 0; v < 7; ++v)
        if (mask & (1ULL << v)) a[static_cast<std::size_t>(v)] = 1;
      CHECK(is_minimal_cut(g, a) == (agreement_components(g, a).count == 2));
    }
  }
}
