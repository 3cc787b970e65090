#include "bap/matching_ops.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "search.hpp"

namespace bap {

Matching maximum_cardinality_matching(const WeightedBipartiteGraph& g) {
  detail::DenseGraph d = detail::DenseGraph::build(g);
  std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
  return detail::max_matching(d, agent_alive, task_alive).to_matching(d);
}

Matching augmenting_path_restore(const WeightedBipartiteGraph& g,
                                 const Matching& m_minus,
                                 const std::vector<Edge>& allowed_edges) {
  detail::DenseGraph d = detail::DenseGraph::build(g);
  std::vector<char> allowed(static_cast<std::size_t>(d.ne()), 0);
  for (const Edge& e : allowed_edges) {
    int idx = d.edge_index(e);
    if (idx < 0) throw InvalidInput("allowed edge not in graph");
    allowed[static_cast<std::size_t>(idx)] = 1;
  }
  for (const Edge& e : m_minus.edges()) {
    int idx = d.edge_index(e);
    if (idx < 0 || !allowed[static_cast<std::size_t>(idx)])
      throw InvalidInput("matching not contained in allowed edges");
  }
  detail::MatchState m = detail::MatchState::from_matching(d, m_minus);
  std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
  detail::SearchOutcome res = detail::layered_search(
      d, agent_alive, task_alive, m,
      [&](int e) { return allowed[static_cast<std::size_t>(e)] != 0; });
  if (res.found) detail::flip_path(d, m, res.path);
  return m.to_matching(d);
}

namespace {

double matching_threshold(const WeightedBipartiteGraph& g, const Matching& m) {
  if (m.empty()) throw InvalidInput("sublevel threshold needs a non-empty matching");
  double maxw = g.weight(m.edges().front());
  for (const Edge& e : m.edges()) maxw = std::max(maxw, g.weight(e));
  return maxw;
}

}  // namespace

std::vector<Edge> sublevel_set(const WeightedBipartiteGraph& g, const Matching& m) {
  double maxw = matching_threshold(g, m);
  std::vector<Edge> out;
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    if (g.weights()[i] <= maxw) out.push_back(g.edges()[i]);
  return out;
}

std::vector<Edge> strict_sublevel_set(const WeightedBipartiteGraph& g,
                                      const Matching& m) {
  double maxw = matching_threshold(g, m);
  std::vector<Edge> out;
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    if (g.weights()[i] < maxw) out.push_back(g.edges()[i]);
  return out;
}

std::vector<Edge> max_weight_edges(const WeightedBipartiteGraph& g,
                                   const std::vector<Edge>& es) {
  if (es.empty()) throw InvalidInput("max_weight_edges needs a non-empty edge set");
  double maxw = g.weight(es.front());
  for (const Edge& e : es) maxw = std::max(maxw, g.weight(e));
  std::vector<Edge> out;
  for (const Edge& e : es)
    if (g.weight(e) == maxw) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_alternating_path(const Path& p, const Matching& m) {
  std::map<std::pair<int, int>, int> in_m, out_m;
  for (const Edge& e : p.edges()) {
    auto& counts = m.contains(e) ? in_m : out_m;
    ++counts[{0, e.agent}];
    ++counts[{1, e.task}];
  }
  for (const auto& [v, c] : in_m)
    if (c > 1) return false;
  for (const auto& [v, c] : out_m)
    if (c > 1) return false;
  return true;
}

bool is_augmenting_path(const Path& p, const Matching& m) {
  if (p.edges().empty() || !is_alternating_path(p, m)) return false;
  // Endpoints are the degree-1 vertices; both must be free in m.
  std::map<std::pair<int, int>, int> degree;
  for (const Edge& e : p.edges()) {
    ++degree[{0, e.agent}];
    ++degree[{1, e.task}];
  }
  for (const auto& [v, d] : degree) {
    if (d != 1) continue;
    bool free = v.first == 0 ? !m.covers_agent(v.second) : !m.covers_task(v.second);
    if (!free) return false;
  }
  return true;
}

}  // namespace bap
