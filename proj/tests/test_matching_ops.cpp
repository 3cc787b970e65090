#include <algorithm>
#include <set>
#include <vector>

#include <doctest.h>

#include "bap/graph.hpp"
#include "bap/instance_gen.hpp"
#include "bap/matching_ops.hpp"
#include "test_util.hpp"

using namespace bap;
using test_util::make_graph;

namespace {

// Random sparse bipartite graph for property checks; always has >= 1 edge.
WeightedBipartiteGraph random_graph(SplitMix64& rng) {
  int na = rng.next_int(2, 5);
  int nt = rng.next_int(2, 5);
  std::vector<WeightedEdge> es;
  for (int a = 1; a <= na; ++a)
    for (int t = 1; t <= nt; ++t)
      if (rng.next_unit() < 0.6) es.push_back({{a, t}, rng.next_unit() * 10});
  if (es.empty()) es.push_back({{1, 1}, 1.0});
  std::vector<AgentId> agents;
  std::vector<TaskId> tasks;
  for (int a = 1; a <= na; ++a) agents.push_back(a);
  for (int t = 1; t <= nt; ++t) tasks.push_back(t);
  return WeightedBipartiteGraph(agents, tasks, es);
}

}  // namespace

TEST_CASE("maximum matching cardinality equals the exhaustive reference") {
  SplitMix64 rng(2024);
  for (int round = 0; round < 60; ++round) {
    WeightedBipartiteGraph g = random_graph(rng);
    Matching m = maximum_cardinality_matching(g);
    CHECK(m.size() == test_util::oracle_max_matching_size(g));
    // No augmenting path may remain (Berge): one restore attempt over the
    // full edge set cannot grow a maximum matching.
    CHECK(augmenting_path_restore(g, m, g.edges()) == m);
  }
}

TEST_CASE("maximum matching basics and determinism") {
  CHECK(maximum_cardinality_matching(make_graph({{{1, 1}, 2.0}})) ==
        Matching({{1, 1}}));
  CHECK(maximum_cardinality_matching(WeightedBipartiteGraph()).empty());
  CHECK(maximum_cardinality_matching(test_util::six_chain()).size() == 6);

  // Ties break toward the lowest identifiers.
  WeightedBipartiteGraph two_agents =
      make_graph({{{1, 1}, 1.0}, {{2, 1}, 1.0}});
  CHECK(maximum_cardinality_matching(two_agents) == Matching({{1, 1}}));
  WeightedBipartiteGraph one_agent = WeightedBipartiteGraph(
      {1}, {1, 2}, {{{1, 1}, 1.0}, {{1, 2}, 1.0}});
  CHECK(maximum_cardinality_matching(one_agent) == Matching({{1, 1}}));

  SplitMix64 rng(7);
  for (int round = 0; round < 10; ++round) {
    WeightedBipartiteGraph g = random_graph(rng);
    CHECK(maximum_cardinality_matching(g) == maximum_cardinality_matching(g));
  }
}

TEST_CASE("augmenting restore grows by exactly one edge when it can") {
  WeightedBipartiteGraph single = make_graph({{{1, 1}, 1.0}});
  CHECK(augmenting_path_restore(single, Matching(), {{1, 1}}) ==
        Matching({{1, 1}}));

  WeightedBipartiteGraph g = test_util::six_chain();
  Matching diag = test_util::six_chain_diagonal();

  SUBCASE("repairable removal rematches through the spare chain") {
    Edge gone{5, 5};
    std::vector<Edge> allowed;
    for (const Edge& e : sublevel_set(g, diag))
      if (e != gone) allowed.push_back(e);
    Matching restored = augmenting_path_restore(g, diag.without(gone), allowed);
    CHECK(restored.size() == 6);
    CHECK(restored.contains({6, 5}));
    CHECK(restored.contains({5, 6}));
    CHECK(!restored.contains(gone));
  }
  SUBCASE("irreparable removal returns the input unchanged") {
    Edge gone{2, 2};
    std::vector<Edge> allowed;
    for (const Edge& e : sublevel_set(g, diag))
      if (e != gone) allowed.push_back(e);
    CHECK(augmenting_path_restore(g, diag.without(gone), allowed) ==
          diag.without(gone));
  }
  SUBCASE("validation") {
    // Matching edge outside the allowed set.
    CHECK_THROWS_AS(augmenting_path_restore(g, diag, {{1, 1}}), InvalidInput);
    // Allowed edge absent from the graph.
    CHECK_THROWS_AS(augmenting_path_restore(g, Matching(), {{1, 6}}), InvalidInput);
  }
}

TEST_CASE("restore cardinality never changes by more than one") {
  SplitMix64 rng(31);
  for (int round = 0; round < 60; ++round) {
    WeightedBipartiteGraph g = random_graph(rng);
    Matching m = maximum_cardinality_matching(g);
    if (!m.empty()) m = m.without(m.edges().front());  // leave room to grow
    Matching r = augmenting_path_restore(g, m, g.edges());
    bool ok = r.size() == m.size() || r.size() == m.size() + 1;
    CHECK(ok);
    for (const Edge& e : r.edges()) CHECK(g.has_edge(e));
  }
}

TEST_CASE("sublevel sets") {
  SUBCASE("all weights equal: everything is level, nothing is strict") {
    WeightedBipartiteGraph g = test_util::six_chain();
    Matching diag = test_util::six_chain_diagonal();
    CHECK(sublevel_set(g, diag) == g.edges());
    CHECK(strict_sublevel_set(g, diag).empty());
  }
  SUBCASE("mixed weights keep only the strictly lighter edges strict") {
    WeightedBipartiteGraph g = test_util::tie_2x2();
    Matching m({{1, 2}, {2, 1}});
    CHECK(sublevel_set(g, m) == g.edges());
    CHECK(strict_sublevel_set(g, m) == std::vector<Edge>{{2, 1}});
  }
  SUBCASE("random instances match the definitional filter") {
    SplitMix64 rng(55);
    for (int round = 0; round < 40; ++round) {
      WeightedBipartiteGraph g = random_graph(rng);
      Matching m = maximum_cardinality_matching(g);
      if (m.empty()) continue;
      double mx = test_util::matching_max_weight(g, m);
      std::vector<Edge> expect_level, expect_strict;
      for (std::size_t i = 0; i < g.edges().size(); ++i) {
        if (g.weights()[i] <= mx) expect_level.push_back(g.edges()[i]);
        if (g.weights()[i] < mx) expect_strict.push_back(g.edges()[i]);
      }
      std::vector<Edge> level = sublevel_set(g, m);
      CHECK(level == expect_level);
      CHECK(strict_sublevel_set(g, m) == expect_strict);
      // The strict set is the level set minus the maximal-weight edges.
      std::vector<Edge> level_minus_max;
      for (const Edge& e : level)
        if (g.weight(e) != mx) level_minus_max.push_back(e);
      CHECK(strict_sublevel_set(g, m) == level_minus_max);
      // The matching itself is always inside its level set.
      for (const Edge& e : m.edges())
        CHECK(std::binary_search(level.begin(), level.end(), e));
    }
  }
  SUBCASE("empty matchings have no threshold") {
    WeightedBipartiteGraph g = test_util::tie_2x2();
    CHECK_THROWS_AS(sublevel_set(g, Matching()), InvalidInput);
    CHECK_THROWS_AS(strict_sublevel_set(g, Matching()), InvalidInput);
    // Matching with an edge the graph does not have.
    CHECK_THROWS_AS(sublevel_set(g, Matching({{9, 9}})), InvalidInput);
  }
}

TEST_CASE("maximal-weight edge selection keeps every tie") {
  WeightedBipartiteGraph g = test_util::tie_2x2();
  CHECK(max_weight_edges(g, {{1, 1}}) == std::vector<Edge>{{1, 1}});
  CHECK(max_weight_edges(g, {{1, 1}, {2, 2}}) ==
        std::vector<Edge>{{1, 1}, {2, 2}});
  CHECK(max_weight_edges(g, g.edges()) ==
        std::vector<Edge>{{1, 1}, {1, 2}, {2, 2}});
  CHECK_THROWS_AS(max_weight_edges(g, {}), InvalidInput);
  CHECK_THROWS_AS(max_weight_edges(g, {{9, 9}}), InvalidInput);

  SUBCASE("unique maximum agrees with a plain linear scan") {
    SplitMix64 rng(91);
    for (int round = 0; round < 40; ++round) {
      WeightedBipartiteGraph g2 = random_graph(rng);
      Edge best = g2.edges()[0];
      for (const Edge& e : g2.edges())
        if (g2.weight(e) > g2.weight(best)) best = e;
      bool unique = true;
      for (const Edge& e : g2.edges())
        if (e != best && g2.weight(e) == g2.weight(best)) unique = false;
      if (!unique) continue;
      CHECK(max_weight_edges(g2, g2.edges()) == std::vector<Edge>{best});
    }
  }
}

TEST_CASE("alternating and augmenting path predicates") {
  WeightedBipartiteGraph g = test_util::six_chain();
  Matching diag = test_util::six_chain_diagonal();

  // A single non-matching edge between two free vertices augments.
  CHECK(is_augmenting_path(Path({{1, 1}}), Matching()));
  // The three-edge repair path around a removed diagonal edge.
  Path repair({{6, 5}, {6, 6}, {5, 6}});
  Matching m_minus = diag.without({5, 5});
  CHECK(is_alternating_path(repair, m_minus));
  CHECK(is_augmenting_path(repair, m_minus));
  // Same path relative to the full diagonal: endpoints are covered.
  CHECK(is_alternating_path(repair, diag));
  CHECK(!is_augmenting_path(repair, diag));
  // Two consecutive non-matching edges violate alternation.
  Path two_free({{2, 1}, {2, 2}});
  CHECK(!is_alternating_path(two_free, Matching({{1, 1}})));
  CHECK(!is_augmenting_path(two_free, Matching({{1, 1}})));
  // A matched single edge alternates but cannot augment.
  CHECK(is_alternating_path(Path({{1, 1}}), Matching({{1, 1}})));
  CHECK(!is_augmenting_path(Path({{1, 1}}), Matching({{1, 1}})));
  // The empty path never augments.
  CHECK(!is_augmenting_path(Path(), Matching()));
}
