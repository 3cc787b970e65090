#pragma once

#include <limits>

#include "bap/graph.hpp"

namespace bap {

// Output of the bottleneck solver: a maximum-cardinality matching whose
// largest weight is minimal, together with that weight and a critical edge
// attaining it (removing the edge's endpoints is what a sequential solver
// does next; no cheaper re-matching around it exists).
struct BottleneckCertificate {
  Matching matching;
  double bottleneck_weight = 0.0;
  Edge bottleneck_edge;
};

// Minimize the maximum edge weight over all maximum-cardinality matchings.
// Requires every task to be matchable (throws SolverError otherwise) and at
// least one task (throws InvalidInput on an empty task set). Deterministic:
// all ties resolve toward the lowest (agent, task) identifiers.
BottleneckCertificate solve_bap(const WeightedBipartiteGraph& g);

// True iff e is a heaviest edge of m and the edge set
// (m + strictly-lighter-edges) \ {e} admits no augmenting path relative to
// m \ {e}; such an edge certifies that m solves the bottleneck problem.
// Throws InvalidInput if e is not a heaviest edge of m.
bool is_critical_bottleneck_edge(const WeightedBipartiteGraph& g,
                                 const Matching& m, const Edge& e);

// True iff removing e from g strictly increases the bottleneck value (or
// makes the matching infeasible). Decided with a single augmenting-path
// search in sublevel_set(g, m) \ {e} relative to m \ {e}; for e outside m the
// answer is always false. Requires m to be a maximum-cardinality matching of
// g (throws InvalidInput otherwise).
bool has_positive_price(const WeightedBipartiteGraph& g, const Matching& m,
                        const Edge& e);

// Increase of the bottleneck value caused by deleting e, +infinity when the
// deletion lowers the maximum matching cardinality.
struct PriceOfAbsence {
  double value = 0.0;
  bool is_infinite() const { return value == std::numeric_limits<double>::infinity(); }
  static PriceOfAbsence infinite() {
    return {std::numeric_limits<double>::infinity()};
  }
  friend bool operator==(const PriceOfAbsence&, const PriceOfAbsence&) = default;
};

// Definitional price: solves a second bottleneck problem on g with e deleted
// and subtracts. Throws InvalidInput if g lacks e or cannot match every task.
PriceOfAbsence price_of_absence(const WeightedBipartiteGraph& g, const Edge& e);

}  // namespace bap
