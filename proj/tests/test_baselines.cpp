#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include <doctest.h>

#include "bap/baselines.hpp"
#include "bap/bottleneck.hpp"
#include "bap/graph.hpp"
#include "bap/instance_gen.hpp"
#include "bap/seqbap.hpp"
#include "test_util.hpp"

using namespace bap;
using test_util::make_graph;

namespace {

using CostMatrix = std::vector<std::vector<std::optional<BigInt>>>;

// Exhaustive assignment reference: best total over every way of giving each
// column a distinct row. Used to pin down the sum solver before trusting it.
std::optional<BigInt> oracle_lsap_total(const CostMatrix& cost,
                                        std::size_t col,
                                        std::vector<bool>& used) {
  if (cost.empty()) return BigInt(0);
  if (col == cost[0].size()) return BigInt(0);
  std::optional<BigInt> best;
  for (std::size_t row = 0; row < cost.size(); ++row) {
    if (used[row] || !cost[row][col]) continue;
    used[row] = true;
    std::optional<BigInt> rest = oracle_lsap_total(cost, col + 1, used);
    used[row] = false;
    if (rest) {
      BigInt total = *cost[row][col] + *rest;
      if (!best || total < *best) best = total;
    }
  }
  return best;
}

CostMatrix random_cost(SplitMix64& rng, int rows, int cols) {
  CostMatrix cost(rows, std::vector<std::optional<BigInt>>(cols));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (rng.next_unit() < 0.85)
        cost[r][c] = BigInt(rng.next_int(0, 20));
  return cost;
}

}  // namespace

TEST_CASE("sum assignment on worked matrices") {
  SUBCASE("identity-favoring 2x2") {
    LsapResult r = solve_lsap({{BigInt(0), BigInt(1)}, {BigInt(1), BigInt(0)}});
    CHECK(r.matching == Matching({{0, 0}, {1, 1}}));
    CHECK(r.total_cost == 0);
  }
  SUBCASE("all-equal costs: deterministic lowest-index choice") {
    CostMatrix cost(3, std::vector<std::optional<BigInt>>(3, BigInt(5)));
    LsapResult r = solve_lsap(cost);
    CHECK(r.matching == Matching({{0, 0}, {1, 1}, {2, 2}}));
    CHECK(r.total_cost == 15);
  }
  SUBCASE("rank-style 2x2 with a cheap off-diagonal cell") {
    // Costs 3,3 / 1,3: the anti-diagonal total 4 beats the diagonal 6.
    LsapResult r = solve_lsap({{BigInt(3), BigInt(3)}, {BigInt(1), BigInt(3)}});
    CHECK(r.matching == Matching({{0, 1}, {1, 0}}));
    CHECK(r.total_cost == 4);
  }
  SUBCASE("forbidden cells route around") {
    LsapResult r = solve_lsap(
        {{BigInt(0), std::nullopt}, {std::nullopt, BigInt(0)}});
    CHECK(r.matching == Matching({{0, 0}, {1, 1}}));
    CHECK(r.total_cost == 0);
  }
  SUBCASE("more rows than columns") {
    LsapResult r = solve_lsap({{BigInt(9)}, {BigInt(2)}, {BigInt(5)}});
    CHECK(r.matching == Matching({{1, 0}}));
    CHECK(r.total_cost == 2);
  }
  SUBCASE("errors") {
    // A column nobody can take.
    CHECK_THROWS_AS(
        solve_lsap({{std::nullopt, BigInt(1)}, {std::nullopt, BigInt(1)}}),
        SolverError);
    // Fewer rows than columns.
    CHECK_THROWS_AS(solve_lsap({{BigInt(1), BigInt(1)}}), InvalidInput);
    // Ragged matrix.
    CHECK_THROWS_AS(solve_lsap({{BigInt(1), BigInt(1)}, {BigInt(1)}}),
                    InvalidInput);
    // Negative cost.
    CHECK_THROWS_AS(solve_lsap({{BigInt(-1)}}), InvalidInput);
    // Empty matrix.
    CHECK_THROWS_AS(solve_lsap({}), InvalidInput);
  }
}

TEST_CASE("sum assignment equals the exhaustive best total") {
  SplitMix64 rng(6001);
  for (int round = 0; round < 60; ++round) {
    int cols = rng.next_int(1, 4);
    int rows = cols + rng.next_int(0, 2);
    CostMatrix cost = random_cost(rng, rows, cols);
    std::vector<bool> used(rows, false);
    std::optional<BigInt> best = oracle_lsap_total(cost, 0, used);
    if (!best) {
      CHECK_THROWS_AS(solve_lsap(cost), SolverError);
      continue;
    }
    LsapResult r = solve_lsap(cost);
    CHECK(r.total_cost == *best);
    CHECK(r.matching.size() == static_cast<std::size_t>(cols));
    // Recompute the total from the matching itself.
    BigInt recomputed = 0;
    for (const Edge& e : r.matching.edges()) {
      REQUIRE(cost[e.agent][e.task].has_value());
      recomputed += *cost[e.agent][e.task];
    }
    CHECK(recomputed == *best);
  }
}

TEST_CASE("exhaustive solution-set report") {
  SUBCASE("tied 2x2") {
    SolutionSetReport rep = brute_force_enumerate(test_util::tie_2x2());
    CHECK(rep.bap_solutions == std::set<Matching>{Matching({{1, 1}, {2, 2}}),
                                                  Matching({{1, 2}, {2, 1}})});
    CHECK(rep.lexbap_solutions == std::set<Matching>{Matching({{1, 2}, {2, 1}})});
    CHECK(rep.lex_min_tuple.values() == std::vector<double>{2.0, 1.0});
  }
  SUBCASE("1x1") {
    SolutionSetReport rep = brute_force_enumerate(make_graph({{{1, 1}, 4.0}}));
    CHECK(rep.bap_solutions == std::set<Matching>{Matching({{1, 1}})});
    CHECK(rep.lexbap_solutions == rep.bap_solutions);
    CHECK(rep.lex_min_tuple.values() == std::vector<double>{4.0});
  }
  SUBCASE("unit-weight chain has two optima") {
    SolutionSetReport rep = brute_force_enumerate(test_util::six_chain());
    CHECK(rep.bap_solutions.size() == 2);
    CHECK(rep.lexbap_solutions == rep.bap_solutions);
    CHECK(rep.lex_min_tuple.values() == std::vector<double>(6, 1.0));
  }
  SUBCASE("caps and errors") {
    CHECK_THROWS_AS(brute_force_enumerate(test_util::tie_heavy_instance(8, 1)),
                    EnumerationCapExceeded);
    WeightedBipartiteGraph uncoverable({1}, {1, 2}, {{{1, 1}, 1.0}});
    CHECK_THROWS_AS(brute_force_enumerate(uncoverable), SolverError);
  }
  SUBCASE("agrees with the independent reference on random instances") {
    for (std::uint64_t seed = 700; seed < 725; ++seed) {
      WeightedBipartiteGraph g = test_util::tie_heavy_instance(
          2 + static_cast<int>(seed % 4), seed);
      SolutionSetReport rep = brute_force_enumerate(g);
      double w = test_util::oracle_min_max(g);
      WeightTuple lexmin = test_util::oracle_lex_min(g);
      CHECK(rep.lex_min_tuple == lexmin);
      std::set<Matching> bap_set, lex_set;
      for (const Matching& m : test_util::all_task_covering_matchings(g)) {
        if (test_util::matching_max_weight(g, m) == w) bap_set.insert(m);
        if (WeightTuple::of(g, m) == lexmin) lex_set.insert(m);
      }
      CHECK(rep.bap_solutions == bap_set);
      CHECK(rep.lexbap_solutions == lex_set);
      CHECK(std::includes(rep.bap_solutions.begin(), rep.bap_solutions.end(),
                          rep.lexbap_solutions.begin(),
                          rep.lexbap_solutions.end()));
    }
  }
}

TEST_CASE("exact lexicographic solver") {
  SUBCASE("tied 2x2 finds the unique optimum") {
    CHECK(solve_lexbap_exact(test_util::tie_2x2()) ==
          Matching({{1, 2}, {2, 1}}));
  }
  SUBCASE("distinct 2x2") {
    CHECK(solve_lexbap_exact(test_util::distinct_2x2()) ==
          Matching({{1, 2}, {2, 1}}));
  }
  SUBCASE("uncoverable task") {
    WeightedBipartiteGraph uncoverable({1}, {1, 2}, {{{1, 1}, 1.0}});
    CHECK_THROWS_AS(solve_lexbap_exact(uncoverable), SolverError);
  }
  SUBCASE("matches the exhaustive lexicographic minimum") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      int n = 2 + static_cast<int>(seed % 6);  // 2..7
      WeightedBipartiteGraph g = generate_instance(n, seed).graph;
      Matching m = solve_lexbap_exact(g);
      CHECK(WeightTuple::of(g, m) == test_util::oracle_lex_min(g));
    }
    for (std::uint64_t seed = 800; seed < 830; ++seed) {
      WeightedBipartiteGraph g = test_util::tie_heavy_instance(
          2 + static_cast<int>(seed % 4), seed);
      SolutionSetReport rep = brute_force_enumerate(g);
      Matching m = solve_lexbap_exact(g);
      CHECK(WeightTuple::of(g, m) == rep.lex_min_tuple);
      CHECK(rep.lexbap_solutions.count(m) == 1);
    }
  }
  SUBCASE("rectangular instances leave the spare agents out") {
    WeightedBipartiteGraph g = make_graph(
        {{{1, 1}, 5.0}, {{2, 1}, 1.0}, {{3, 1}, 3.0}});
    CHECK(solve_lexbap_exact(g) == Matching({{2, 1}}));
  }
}

TEST_CASE("rank encoding orders totals exactly like weight tuples") {
  // cost(e) = (n+1)^rank(w(e)) with dense ascending ranks: totals over a
  // matching compare identically to descending weight tuples because no rank
  // can appear more than n times, so no carries occur.
  for (std::uint64_t seed = 900; seed < 925; ++seed) {
    int n = 2 + static_cast<int>(seed % 3);  // 2..4
    WeightedBipartiteGraph g = test_util::tie_heavy_instance(n, seed);
    std::vector<double> distinct = g.weights();
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    BigInt base = static_cast<int>(g.tasks().size()) + 1;
    auto cost_of = [&](const Matching& m) {
      BigInt total = 0;
      for (const Edge& e : m.edges()) {
        std::size_t rank =
            std::lower_bound(distinct.begin(), distinct.end(), g.weight(e)) -
            distinct.begin();
        BigInt c = 1;
        for (std::size_t i = 0; i < rank; ++i) c *= base;
        total += c;
      }
      return total;
    };
    std::vector<Matching> all = test_util::all_task_covering_matchings(g);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j) {
        WeightTuple ti = WeightTuple::of(g, all[i]);
        WeightTuple tj = WeightTuple::of(g, all[j]);
        BigInt ci = cost_of(all[i]);
        BigInt cj = cost_of(all[j]);
        CHECK((ti < tj) == (ci < cj));
        CHECK((ti == tj) == (ci == cj));
      }
  }
}

TEST_CASE("fresh-start greedy baseline") {
  SUBCASE("worked instances") {
    CHECK(solve_naive_greedy(test_util::distinct_2x2()) ==
          solve_seqbap(test_util::distinct_2x2()).matching);
    CHECK(solve_naive_greedy(make_graph({{{1, 1}, 2.5}})) ==
          Matching({{1, 1}}));
  }
  SUBCASE("identical to the incremental solver when weights are distinct") {
    for (std::uint64_t seed = 30; seed < 55; ++seed) {
      int n = 2 + static_cast<int>(seed % 6);  // 2..7
      WeightedBipartiteGraph g = generate_instance(n, seed).graph;
      CHECK(solve_naive_greedy(g) == solve_seqbap(g).matching);
    }
  }
  SUBCASE("always lands in the enumerated sequential solution set") {
    for (std::uint64_t seed = 1000; seed < 1025; ++seed) {
      WeightedBipartiteGraph g = test_util::tie_heavy_instance(
          2 + static_cast<int>(seed % 4), seed);
      Matching m = solve_naive_greedy(g);
      CHECK(test_util::matching_max_weight(g, m) ==
            solve_bap(g).bottleneck_weight);
      std::set<Matching> seq = enumerate_seqbap_solutions(g);
      CHECK(seq.count(m) == 1);
    }
  }
}
