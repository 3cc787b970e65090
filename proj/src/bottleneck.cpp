#include "bap/bottleneck.hpp"

#include <algorithm>
#include <utility>

#include "bap/matching_ops.hpp"
#include "search.hpp"

namespace bap {

BottleneckCertificate solve_bap(const WeightedBipartiteGraph& g) {
  if (g.tasks().empty())
    throw InvalidInput("bottleneck problem needs at least one task");
  detail::DenseGraph d = detail::DenseGraph::build(g);
  std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
  detail::MatchState m = detail::max_matching(d, agent_alive, task_alive);
  if (m.size < d.nt())
    throw SolverError("not every task can be matched");
  detail::DescentOutcome desc = detail::bap_descent(d, agent_alive, task_alive, m);
  return {m.to_matching(d), desc.maxw, d.edge(desc.critical_edge)};
}

bool is_critical_bottleneck_edge(const WeightedBipartiteGraph& g,
                                 const Matching& m, const Edge& e) {
  if (!m.contains(e))
    throw InvalidInput("edge is not in the matching");
  double maxw = g.weight(m.edges().front());
  for (const Edge& f : m.edges()) maxw = std::max(maxw, g.weight(f));
  if (g.weight(e) != maxw)
    throw InvalidInput("edge is not a heaviest edge of the matching");
  detail::DenseGraph d = detail::DenseGraph::build(g);
  detail::MatchState ms = detail::MatchState::from_matching(d, m);
  int probe = d.edge_index(e);
  ms.remove(d, probe);
  std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
  // Working set m + strictly lighter edges, probe excluded; the exclusive
  // weight cap covers both the sublevel bound and the probe itself.
  detail::SearchOutcome res = detail::layered_search(
      d, agent_alive, task_alive, ms, [&](int idx) { return idx != probe; },
      maxw, /*cap_exclusive=*/true);
  return !res.found;
}

bool has_positive_price(const WeightedBipartiteGraph& g, const Matching& m,
                        const Edge& e) {
  g.weight(e);  // membership check, throws InvalidInput for foreign edges
  detail::DenseGraph d = detail::DenseGraph::build(g);
  detail::MatchState ms = detail::MatchState::from_matching(d, m);
  std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
  detail::MatchState full = detail::max_matching(d, agent_alive, task_alive);
  if (ms.size != full.size)
    throw InvalidInput("matching is not of maximum cardinality");
  if (!m.contains(e)) return false;  // some maximum matching (m) avoids e
  double maxw = g.weight(m.edges().front());
  for (const Edge& f : m.edges()) maxw = std::max(maxw, g.weight(f));
  return detail::positive_price_scan(d, agent_alive, task_alive, ms, maxw,
                                     d.edge_index(e));
}

PriceOfAbsence price_of_absence(const WeightedBipartiteGraph& g, const Edge& e) {
  g.weight(e);  // membership check
  Matching full = maximum_cardinality_matching(g);
  if (full.size() < g.tasks().size())
    throw InvalidInput("graph cannot match every task");
  double before = solve_bap(g).bottleneck_weight;
  // Same vertex sets, one edge fewer.
  std::vector<WeightedEdge> rest;
  rest.reserve(g.edge_count() - 1);
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    if (g.edges()[i] != e) rest.push_back({g.edges()[i], g.weights()[i]});
  WeightedBipartiteGraph g_minus(g.agents(), g.tasks(), std::move(rest));
  if (maximum_cardinality_matching(g_minus).size() < full.size())
    return PriceOfAbsence::infinite();
  double after = solve_bap(g_minus).bottleneck_weight;
  return {after - before};
}

}  // namespace bap
