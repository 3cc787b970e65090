#include "bap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <utility>

namespace bap {

namespace {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

WeightedBipartiteGraph::WeightedBipartiteGraph(std::vector<AgentId> agents,
                                               std::vector<TaskId> tasks,
                                               std::vector<WeightedEdge> edges)
    : agents_(sorted_unique(std::move(agents))),
      tasks_(sorted_unique(std::move(tasks))) {
  std::sort(edges.begin(), edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.edge < b.edge; });
  edges_.reserve(edges.size());
  weights_.reserve(edges.size());
  for (const WeightedEdge& we : edges) {
    if (!std::isfinite(we.weight))
      throw InvalidInput("edge weight must be finite");
    if (!has_agent(we.edge.agent) || !has_task(we.edge.task))
      throw InvalidInput("edge endpoint not among declared vertices");
    if (!edges_.empty() && edges_.back() == we.edge)
      throw InvalidInput("duplicate edge");
    edges_.push_back(we.edge);
    weights_.push_back(we.weight);
  }
}

WeightedBipartiteGraph WeightedBipartiteGraph::from_edges(std::vector<WeightedEdge> edges) {
  std::vector<AgentId> agents;
  std::vector<TaskId> tasks;
  for (const WeightedEdge& we : edges) {
    agents.push_back(we.edge.agent);
    tasks.push_back(we.edge.task);
  }
  return WeightedBipartiteGraph(std::move(agents), std::move(tasks), std::move(edges));
}

bool WeightedBipartiteGraph::has_agent(AgentId a) const {
  return std::binary_search(agents_.begin(), agents_.end(), a);
}

bool WeightedBipartiteGraph::has_task(TaskId t) const {
  return std::binary_search(tasks_.begin(), tasks_.end(), t);
}

bool WeightedBipartiteGraph::has_edge(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

double WeightedBipartiteGraph::weight(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e)
    throw InvalidInput("edge not in graph");
  return weights_[static_cast<std::size_t>(it - edges_.begin())];
}

std::vector<Edge> WeightedBipartiteGraph::edges_of_agent(AgentId a) const {
  auto lo = std::lower_bound(edges_.begin(), edges_.end(), Edge{a, std::numeric_limits<TaskId>::min()});
  std::vector<Edge> out;
  for (auto it = lo; it != edges_.end() && it->agent == a; ++it) out.push_back(*it);
  return out;
}

Matching::Matching(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  std::vector<AgentId> agents;
  std::vector<TaskId> tasks;
  for (const Edge& e : edges_) {
    agents.push_back(e.agent);
    tasks.push_back(e.task);
  }
  std::sort(agents.begin(), agents.end());
  std::sort(tasks.begin(), tasks.end());
  if (std::adjacent_find(agents.begin(), agents.end()) != agents.end() ||
      std::adjacent_find(tasks.begin(), tasks.end()) != tasks.end())
    throw InvalidInput("matching reuses a vertex");
}

bool Matching::contains(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::optional<TaskId> Matching::task_of(AgentId a) const {
  for (const Edge& e : edges_)
    if (e.agent == a) return e.task;
  return std::nullopt;
}

std::optional<AgentId> Matching::agent_of(TaskId t) const {
  for (const Edge& e : edges_)
    if (e.task == t) return e.agent;
  return std::nullopt;
}

Matching Matching::without(const Edge& e) const {
  std::vector<Edge> rest;
  rest.reserve(edges_.size());
  for (const Edge& f : edges_)
    if (f != e) rest.push_back(f);
  return Matching(std::move(rest));
}

WeightTuple::WeightTuple(std::vector<double> weights) : values_(std::move(weights)) {
  for (double w : values_)
    if (!std::isfinite(w)) throw InvalidInput("weight tuple entry must be finite");
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

WeightTuple WeightTuple::of(const WeightedBipartiteGraph& g, const Matching& m) {
  std::vector<double> ws;
  ws.reserve(m.size());
  for (const Edge& e : m.edges()) ws.push_back(g.weight(e));
  return WeightTuple(std::move(ws));
}

bool operator<(const WeightTuple& a, const WeightTuple& b) {
  return std::lexicographical_compare(a.values_.begin(), a.values_.end(),
                                      b.values_.begin(), b.values_.end());
}

Path::Path(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw InvalidInput("path repeats an edge");
  if (edges_.empty()) return;
  // Vertex keyed by side so agent and task ids cannot collide.
  std::map<std::pair<int, int>, int> degree;
  for (const Edge& e : edges_) {
    ++degree[{0, e.agent}];
    ++degree[{1, e.task}];
  }
  int endpoints = 0;
  for (const auto& [v, d] : degree) {
    if (d > 2) throw InvalidInput("path visits a vertex more than twice");
    if (d == 1) ++endpoints;
  }
  if (endpoints != 2 || degree.size() != edges_.size() + 1)
    throw InvalidInput("edges do not form a simple path");
  // Degree counts alone cannot rule out a stray cycle component, so walk the
  // edge set from one vertex and require everything to be reachable.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> adj;
  for (const Edge& e : edges_) {
    adj[{0, e.agent}].push_back({1, e.task});
    adj[{1, e.task}].push_back({0, e.agent});
  }
  std::vector<std::pair<int, int>> stack{adj.begin()->first};
  std::map<std::pair<int, int>, bool> seen{{stack.front(), true}};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  if (seen.size() != degree.size())
    throw InvalidInput("edges do not form a connected path");
}

}  // namespace bap
