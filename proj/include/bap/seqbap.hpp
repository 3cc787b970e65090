#pragma once

#include <set>
#include <vector>

#include "bap/graph.hpp"

namespace bap {

// One locking step of the sequential solver: the critical edge found by the
// bottleneck descent, every matched edge locked in that step (all edges whose
// deletion would worsen the current subproblem, plus the critical-edge
// fallback when none of those is a heaviest edge), and the bottleneck value
// of the subproblem at that moment.
struct SelectionBatch {
  Edge critical_edge;
  std::vector<Edge> locked_edges;  // sorted by (agent, task)
  double bottleneck_weight = 0.0;

  friend bool operator==(const SelectionBatch&, const SelectionBatch&) = default;
};

struct SeqBapResult {
  Matching matching;
  // True iff every batch locked at least one heaviest edge whose deletion
  // would worsen its subproblem; the certified consequence is that the
  // returned matching is the unique lexicographically optimal assignment.
  bool exact = true;
  std::vector<SelectionBatch> selections;

  friend bool operator==(const SeqBapResult&, const SeqBapResult&) = default;
};

// Sequential bottleneck solver. Starting from the initial maximum-cardinality
// matching m0, repeatedly descends to a bottleneck assignment of the current
// subgraph, locks the batch of forced edges (price tested against the current
// subgraph), removes their endpoints, and keeps the surviving matching for
// the next round. Deterministic: all ties resolve toward the lowest
// (agent, task) identifiers. Throws InvalidInput if m0 is not a
// maximum-cardinality matching of g, SolverError if some task is unmatchable.
SeqBapResult solve_seqbap(const WeightedBipartiteGraph& g, const Matching& m0);

// Same, with m0 = maximum_cardinality_matching(g).
SeqBapResult solve_seqbap(const WeightedBipartiteGraph& g);

// Exhaustive solution set of the sequential-selection rule: recurses over
// every bottleneck assignment of every subproblem and every maximal-price
// heaviest edge. Oracle companion for small instances; throws
// EnumerationCapExceeded when either vertex side exceeds cap.
std::set<Matching> enumerate_seqbap_solutions(const WeightedBipartiteGraph& g,
                                              int cap = 6);

}  // namespace bap
