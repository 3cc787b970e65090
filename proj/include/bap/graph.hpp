#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "bap/errors.hpp"

namespace bap {

using AgentId = int;
using TaskId = int;

// One undirected edge of a bipartite graph, identified by its endpoints.
// Agents and tasks live in separate id spaces.
struct Edge {
  AgentId agent = -1;
  TaskId task = -1;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct WeightedEdge {
  Edge edge;
  double weight = 0.0;
};

// Finite weighted bipartite graph, immutable after construction. Edge storage
// is canonical (sorted by (agent, task)), so equal inputs always produce
// byte-identical behaviour downstream.
class WeightedBipartiteGraph {
 public:
  WeightedBipartiteGraph() = default;

  // Explicit vertex sets; every edge endpoint must be listed. Duplicate edges,
  // unknown endpoints and non-finite weights are rejected.
  WeightedBipartiteGraph(std::vector<AgentId> agents, std::vector<TaskId> tasks,
                         std::vector<WeightedEdge> edges);

  // Vertex sets implied by the edges (no isolated vertices).
  static WeightedBipartiteGraph from_edges(std::vector<WeightedEdge> edges);

  const std::vector<AgentId>& agents() const { return agents_; }
  const std::vector<TaskId>& tasks() const { return tasks_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_agent(AgentId a) const;
  bool has_task(TaskId t) const;
  bool has_edge(const Edge& e) const;
  double weight(const Edge& e) const;  // throws InvalidInput for absent edges
  std::vector<Edge> edges_of_agent(AgentId a) const;

  friend bool operator==(const WeightedBipartiteGraph&,
                         const WeightedBipartiteGraph&) = default;

 private:
  std::vector<AgentId> agents_;   // sorted unique
  std::vector<TaskId> tasks_;     // sorted unique
  std::vector<Edge> edges_;       // sorted by (agent, task)
  std::vector<double> weights_;   // parallel to edges_
};

// A set of edges in which no vertex appears twice. Canonically sorted;
// comparison is set comparison.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<Edge> edges);  // throws InvalidInput on vertex reuse

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool contains(const Edge& e) const;
  bool covers_agent(AgentId a) const { return task_of(a).has_value(); }
  bool covers_task(TaskId t) const { return agent_of(t).has_value(); }
  std::optional<TaskId> task_of(AgentId a) const;
  std::optional<AgentId> agent_of(TaskId t) const;
  Matching without(const Edge& e) const;

  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<Edge> edges_;  // sorted by (agent, task)
};

// Matching weights sorted in descending order, compared lexicographically
// with exact floating-point equality (no tolerance).
class WeightTuple {
 public:
  WeightTuple() = default;
  explicit WeightTuple(std::vector<double> weights);  // sorts descending
  static WeightTuple of(const WeightedBipartiteGraph& g, const Matching& m);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  friend bool operator==(const WeightTuple&, const WeightTuple&) = default;
  friend bool operator<(const WeightTuple& a, const WeightTuple& b);
  friend bool operator<=(const WeightTuple& a, const WeightTuple& b) { return a == b || a < b; }
  friend bool operator>(const WeightTuple& a, const WeightTuple& b) { return b < a; }
  friend bool operator>=(const WeightTuple& a, const WeightTuple& b) { return b <= a; }

 private:
  std::vector<double> values_;  // descending
};

// An edge set forming a simple path: all vertices distinct, every vertex
// incident to at most two path edges, exactly two endpoints. Stored as a
// canonical sorted set; the empty path is allowed.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<Edge> edges);  // throws InvalidInput if not a simple path

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t length() const { return edges_.size(); }

  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  std::vector<Edge> edges_;
};

}  // namespace bap
