#pragma once

#include <optional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bap/graph.hpp"

namespace bap {

using BigInt = boost::multiprecision::cpp_int;

// Exhaustive reference solution sets over all task-perfect matchings.
struct SolutionSetReport {
  std::set<Matching> bap_solutions;     // minimal maximum weight
  std::set<Matching> lexbap_solutions;  // lexicographically minimal weight tuple
  WeightTuple lex_min_tuple;
};

// Enumerates every task-perfect matching of g (tasks <= agents). Throws
// EnumerationCapExceeded when either vertex side exceeds cap, SolverError if
// no task-perfect matching exists.
SolutionSetReport brute_force_enumerate(const WeightedBipartiteGraph& g,
                                        int cap = 7);

// Exact linear sum assignment: give every task a distinct agent minimizing
// the total cost; all arithmetic is exact big-integer. cost[a][t] is the cost
// of pairing agent-row a with task-column t, std::nullopt forbids the pair.
// Requires rows >= columns; throws SolverError when no all-finite assignment
// exists. Deterministic: index-order tie-breaking.
struct LsapResult {
  Matching matching;  // agent ids = row indices, task ids = column indices
  BigInt total_cost;
};
LsapResult solve_lsap(const std::vector<std::vector<std::optional<BigInt>>>& cost);

// Exact lexicographic bottleneck solver by rank encoding: dense-ranks the
// graph's distinct weights ascending as r = 0..K-1, assigns cost (n+1)^r with
// n = task count, and solves the sum problem with exact arithmetic. Base n+1
// prevents carries, so total-cost order coincides with lexicographic tuple
// order. Deliberately unoptimized reference: cost sizes grow with the full
// rank range, making this the slow-but-certain end of the solver lineup.
Matching solve_lexbap_exact(const WeightedBipartiteGraph& g);

// Sequential baseline that never reuses work: each step solves a fresh
// bottleneck problem on the remaining subgraph, selects the lowest-id
// heaviest matched edge whose deletion would worsen the subproblem (falling
// back to the critical edge when none would), and removes its endpoints.
Matching solve_naive_greedy(const WeightedBipartiteGraph& g);

}  // namespace bap
