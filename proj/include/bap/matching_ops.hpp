#pragma once

#include <vector>

#include "bap/graph.hpp"

namespace bap {

// Deterministic maximum-cardinality matching built by repeated augmenting
// searches. Every search is a layered breadth-first sweep seeded at all free
// agents in ascending id order; each task reached in a layer is claimed by the
// lowest-id claiming agent, and the lowest-id free task terminates a search.
Matching maximum_cardinality_matching(const WeightedBipartiteGraph& g);

// One augmentation attempt relative to m_minus inside allowed_edges. Returns
// m_minus ^ P (symmetric difference) for the first augmenting path P found by
// the deterministic layered search, or m_minus unchanged when no augmenting
// path exists. Throws InvalidInput unless m_minus is a subset of allowed_edges
// and allowed_edges is a subset of g's edges.
Matching augmenting_path_restore(const WeightedBipartiteGraph& g,
                                 const Matching& m_minus,
                                 const std::vector<Edge>& allowed_edges);

// Edges of g no heavier than m's heaviest edge. Throws InvalidInput if m is
// empty (the threshold would be undefined) or m is not contained in g.
std::vector<Edge> sublevel_set(const WeightedBipartiteGraph& g, const Matching& m);

// Edges of g strictly lighter than m's heaviest edge.
std::vector<Edge> strict_sublevel_set(const WeightedBipartiteGraph& g, const Matching& m);

// The subset of es carrying maximal weight, ties included. Throws
// InvalidInput if es is empty or contains edges absent from g.
std::vector<Edge> max_weight_edges(const WeightedBipartiteGraph& g,
                                   const std::vector<Edge>& es);

// True iff every vertex of p touches at most one edge of p inside m and at
// most one outside m.
bool is_alternating_path(const Path& p, const Matching& m);

// True iff p is alternating and both endpoints are free relative to m.
// The empty path is not augmenting.
bool is_augmenting_path(const Path& p, const Matching& m);

}  // namespace bap
