#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "bap/graph.hpp"
#include "bap/io.hpp"
#include "test_util.hpp"

using namespace bap;
using test_util::make_graph;

TEST_CASE("graph construction canonicalizes and validates") {
  SUBCASE("vertex and edge order of the input does not matter") {
    WeightedBipartiteGraph a({2, 1}, {7, 5},
                             {{{2, 5}, 1.5}, {{1, 7}, 2.5}, {{1, 5}, 0.5}});
    WeightedBipartiteGraph b({1, 2}, {5, 7},
                             {{{1, 5}, 0.5}, {{1, 7}, 2.5}, {{2, 5}, 1.5}});
    CHECK(a == b);
    CHECK(a.agents() == std::vector<AgentId>{1, 2});
    CHECK(a.tasks() == std::vector<TaskId>{5, 7});
    CHECK(a.edges() == std::vector<Edge>{{1, 5}, {1, 7}, {2, 5}});
    CHECK(a.weights() == std::vector<double>{0.5, 2.5, 1.5});
  }
  SUBCASE("duplicate edges are rejected") {
    CHECK_THROWS_AS(WeightedBipartiteGraph({1}, {2}, {{{1, 2}, 1.0}, {{1, 2}, 2.0}}),
                    InvalidInput);
  }
  SUBCASE("edges must use declared vertices") {
    CHECK_THROWS_AS(WeightedBipartiteGraph({1}, {2}, {{{1, 3}, 1.0}}), InvalidInput);
    CHECK_THROWS_AS(WeightedBipartiteGraph({1}, {2}, {{{9, 2}, 1.0}}), InvalidInput);
  }
  SUBCASE("weights must be finite") {
    CHECK_THROWS_AS(
        WeightedBipartiteGraph({1}, {2}, {{{1, 2}, std::numeric_limits<double>::infinity()}}),
        InvalidInput);
    CHECK_THROWS_AS(
        WeightedBipartiteGraph({1}, {2}, {{{1, 2}, std::nan("")}}), InvalidInput);
  }
  SUBCASE("from_edges infers the vertex sets") {
    WeightedBipartiteGraph g = make_graph({{{3, 1}, 1.0}, {{2, 4}, 2.0}});
    CHECK(g.agents() == std::vector<AgentId>{2, 3});
    CHECK(g.tasks() == std::vector<TaskId>{1, 4});
    CHECK(g.edge_count() == 2);
  }
  SUBCASE("empty graph is allowed") {
    WeightedBipartiteGraph g;
    CHECK(g.agents().empty());
    CHECK(g.edges().empty());
  }
}

TEST_CASE("graph accessors") {
  WeightedBipartiteGraph g =
      make_graph({{{1, 1}, 1.0}, {{1, 2}, 3.0}, {{2, 1}, 2.0}});
  CHECK(g.has_agent(1));
  CHECK(!g.has_agent(3));
  CHECK(g.has_task(2));
  CHECK(!g.has_task(3));
  CHECK(g.has_edge({1, 2}));
  CHECK(!g.has_edge({2, 2}));
  CHECK(g.weight({1, 2}) == 3.0);
  CHECK_THROWS_AS(g.weight({2, 2}), InvalidInput);
  CHECK(g.edges_of_agent(1) == std::vector<Edge>{{1, 1}, {1, 2}});
  CHECK(g.edges_of_agent(2) == std::vector<Edge>{{2, 1}});
}

TEST_CASE("matching validates vertex disjointness") {
  Matching m({{2, 1}, {1, 2}});
  CHECK(m.size() == 2);
  CHECK(m.edges() == std::vector<Edge>{{1, 2}, {2, 1}});  // canonical order
  CHECK(m.contains({1, 2}));
  CHECK(!m.contains({1, 1}));
  CHECK(m.task_of(1) == 2);
  CHECK(m.agent_of(1) == 2);
  CHECK(!m.task_of(3).has_value());
  CHECK(m.covers_agent(2));
  CHECK(!m.covers_task(3));

  CHECK_THROWS_AS(Matching({{1, 1}, {1, 2}}), InvalidInput);  // agent reused
  CHECK_THROWS_AS(Matching({{1, 1}, {2, 1}}), InvalidInput);  // task reused

  Matching less = m.without({1, 2});
  CHECK(less.edges() == std::vector<Edge>{{2, 1}});
  CHECK(m.without({9, 9}) == m);
}

TEST_CASE("weight tuples sort descending and compare lexicographically") {
  WeightTuple t(std::vector<double>{1.0, 3.0, 2.0});
  CHECK(t.values() == std::vector<double>{3.0, 2.0, 1.0});

  // Worked comparison: (5,3,3,3) precedes (5,4,3,2).
  WeightTuple a(std::vector<double>{5, 3, 3, 3});
  WeightTuple b(std::vector<double>{5, 4, 3, 2});
  CHECK(a < b);
  CHECK(!(b < a));
  CHECK(a <= b);
  CHECK(b > a);
  CHECK(a != b);
  CHECK(a == WeightTuple(std::vector<double>{3, 3, 5, 3}));

  WeightedBipartiteGraph g = test_util::distinct_2x2();
  Matching m({{1, 2}, {2, 1}});
  CHECK(WeightTuple::of(g, m).values() == std::vector<double>{3.0, 2.0});

  SUBCASE("non-increasing by construction on random inputs") {
    bap::SplitMix64 rng(99);
    for (int round = 0; round < 20; ++round) {
      std::vector<double> vals;
      for (int i = 0; i < 8; ++i) vals.push_back(rng.next_unit());
      WeightTuple wt(vals);
      for (std::size_t i = 0; i + 1 < wt.size(); ++i)
        CHECK(wt.values()[i] >= wt.values()[i + 1]);
    }
  }
}

TEST_CASE("paths must be simple and connected") {
  CHECK_NOTHROW(Path(std::vector<Edge>{}));
  CHECK(Path({{1, 1}}).length() == 1);
  // A three-edge zig-zag: a6-b5, a6-b6, a5-b6.
  CHECK_NOTHROW(Path({{6, 5}, {6, 6}, {5, 6}}));
  // A vertex of degree three is not a path.
  CHECK_THROWS_AS(Path({{1, 1}, {2, 1}, {3, 1}}), InvalidInput);
  // Two disjoint edges sharing no vertex are not one path.
  CHECK_THROWS_AS(Path({{1, 1}, {2, 2}}), InvalidInput);
  // A 4-cycle has no endpoints.
  CHECK_THROWS_AS(Path({{1, 1}, {1, 2}, {2, 1}, {2, 2}}), InvalidInput);
  // Repeated edge.
  CHECK_THROWS_AS(Path({{1, 1}, {1, 1}}), InvalidInput);
}

TEST_CASE("instance files round-trip byte for byte") {
  WeightedBipartiteGraph g =
      make_graph({{{1, 1}, 0.1}, {{1, 2}, 100.0}, {{2, 1}, 1.0 / 3.0}});
  std::ostringstream out1;
  save_instance(g, out1);
  std::istringstream in(out1.str());
  WeightedBipartiteGraph back = load_instance(in);
  CHECK(back == g);

  std::ostringstream out2;
  save_instance(back, out2);
  CHECK(out1.str() == out2.str());

  SUBCASE("header and row format") {
    std::istringstream lines(out1.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "agent,task,weight");
    std::getline(lines, line);
    CHECK(line == "A1,T1,0.1");
  }
}

TEST_CASE("instance parser rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return load_instance(in);
  };
  CHECK_THROWS_AS(parse(""), InvalidInput);
  CHECK_THROWS_AS(parse("foo,bar\n"), InvalidInput);
  CHECK_THROWS_AS(parse("agent,task,weight\nA1,T1\n"), InvalidInput);
  CHECK_THROWS_AS(parse("agent,task,weight\nB1,T1,1.0\n"), InvalidInput);
  CHECK_THROWS_AS(parse("agent,task,weight\nA1,A1,1.0\n"), InvalidInput);
  CHECK_THROWS_AS(parse("agent,task,weight\nA1,T1,abc\n"), InvalidInput);
  CHECK_THROWS_AS(parse("agent,task,weight\nA1,T1,1.0\nA1,T1,2.0\n"), InvalidInput);
  CHECK_THROWS_AS(load_instance_file("/nonexistent/path.csv"), InvalidInput);
  // Windows line endings are tolerated.
  CHECK_NOTHROW(parse("agent,task,weight\r\nA1,T1,1.0\r\n"));
}

TEST_CASE("weight formatting is round-trip exact and shortest-form") {
  CHECK(format_weight(0.1) == "0.1");
  CHECK(format_weight(100.0) == "100");
  CHECK(format_weight(-2.5) == "-2.5");
  bap::SplitMix64 rng(4242);
  for (int i = 0; i < 200; ++i) {
    double w = rng.next_unit() * 141.5;
    CHECK(std::stod(format_weight(w)) == w);
  }
}
