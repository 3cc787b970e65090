#pragma once

// Internal dense machinery shared by the solvers. Public API types are
// converted once at the boundary; every search below runs on contiguous
// integer indices. Not installed.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bap/graph.hpp"
#include "bap/matching_ops.hpp"

namespace bap::detail {

// Index-based view of a WeightedBipartiteGraph. Dense agent/task indices
// follow ascending public ids, and edges stay sorted by (agent, task), so
// index order and public id order agree everywhere.
struct DenseGraph {
  std::vector<AgentId> agent_ids;  // dense agent index -> public id
  std::vector<TaskId> task_ids;    // dense task index -> public id
  std::vector<int> eagent;         // edge index -> dense agent
  std::vector<int> etask;          // edge index -> dense task
  std::vector<double> ew;          // edge index -> weight
  std::vector<int> abegin;         // CSR offsets: agent a owns [abegin[a], abegin[a+1])
  std::vector<int> aw_order;       // same slices, edge indices ascending by weight

  int na() const { return static_cast<int>(agent_ids.size()); }
  int nt() const { return static_cast<int>(task_ids.size()); }
  int ne() const { return static_cast<int>(eagent.size()); }
  Edge edge(int e) const { return {agent_ids[eagent[e]], task_ids[etask[e]]}; }

  static DenseGraph build(const WeightedBipartiteGraph& g) {
    DenseGraph d;
    d.agent_ids = g.agents();
    d.task_ids = g.tasks();
    d.eagent.reserve(g.edge_count());
    d.etask.reserve(g.edge_count());
    d.ew = g.weights();
    for (const Edge& e : g.edges()) {
      d.eagent.push_back(static_cast<int>(
          std::lower_bound(d.agent_ids.begin(), d.agent_ids.end(), e.agent) -
          d.agent_ids.begin()));
      d.etask.push_back(static_cast<int>(
          std::lower_bound(d.task_ids.begin(), d.task_ids.end(), e.task) -
          d.task_ids.begin()));
    }
    d.abegin.assign(d.na() + 1, 0);
    for (int a : d.eagent) ++d.abegin[a + 1];
    for (int a = 0; a < d.na(); ++a) d.abegin[a + 1] += d.abegin[a];
    d.aw_order.resize(d.ne());
    for (int e = 0; e < d.ne(); ++e) d.aw_order[e] = e;
    for (int a = 0; a < d.na(); ++a)
      std::stable_sort(d.aw_order.begin() + d.abegin[a],
                       d.aw_order.begin() + d.abegin[a + 1],
                       [&](int x, int y) { return d.ew[x] < d.ew[y]; });
    return d;
  }

  // Dense edge index of a public edge, -1 when absent.
  int edge_index(const Edge& e) const {
    auto ait = std::lower_bound(agent_ids.begin(), agent_ids.end(), e.agent);
    auto tit = std::lower_bound(task_ids.begin(), task_ids.end(), e.task);
    if (ait == agent_ids.end() || *ait != e.agent) return -1;
    if (tit == task_ids.end() || *tit != e.task) return -1;
    int a = static_cast<int>(ait - agent_ids.begin());
    int t = static_cast<int>(tit - task_ids.begin());
    for (int idx = abegin[a]; idx < abegin[a + 1]; ++idx)
      if (etask[idx] == t) return idx;
    return -1;
  }
};

// Matched edge index per endpoint, -1 when free.
struct MatchState {
  std::vector<int> at_agent;
  std::vector<int> at_task;
  int size = 0;

  explicit MatchState(const DenseGraph& g)
      : at_agent(g.na(), -1), at_task(g.nt(), -1) {}

  void add(const DenseGraph& g, int e) {
    at_agent[g.eagent[e]] = e;
    at_task[g.etask[e]] = e;
    ++size;
  }
  void remove(const DenseGraph& g, int e) {
    at_agent[g.eagent[e]] = -1;
    at_task[g.etask[e]] = -1;
    --size;
  }
  bool has(const DenseGraph& g, int e) const { return at_agent[g.eagent[e]] == e; }

  Matching to_matching(const DenseGraph& g) const {
    std::vector<Edge> edges;
    for (int a = 0; a < g.na(); ++a)
      if (at_agent[a] >= 0) edges.push_back(g.edge(at_agent[a]));
    return Matching(std::move(edges));
  }

  static MatchState from_matching(const DenseGraph& g, const Matching& m) {
    MatchState s(g);
    for (const Edge& e : m.edges()) {
      int idx = g.edge_index(e);
      if (idx < 0) throw InvalidInput("matching edge not in graph");
      s.add(g, idx);
    }
    return s;
  }
};

struct SearchOutcome {
  bool found = false;
  std::vector<int> path;  // augmenting path as edge indices
  int layers = 0;         // layer expansions performed (flooding rounds)
};

// Per-thread buffers reused across searches; the claim array is invalidated
// in O(1) per search through an epoch stamp instead of a clear.
struct SearchScratch {
  std::vector<int> claim_edge;            // task -> claiming edge
  std::vector<std::uint64_t> claim_mark;  // task -> epoch of the claim
  std::uint64_t epoch = 0;
  std::vector<int> frontier, claimed_now;
};

inline SearchScratch& search_scratch() {
  thread_local SearchScratch s;
  return s;
}

// Multi-source layered alternating search, the one deterministic search rule
// of this library. The frontier starts at every alive free agent in ascending
// index order; each layer claims unvisited alive tasks through allowed
// non-matching edges, lowest agent first; the lowest-index free task reached
// ends the search. The terminal layer (hit or empty) is counted: it is a
// flooding round in the distributed execution.
//
// Adjacency is walked in ascending weight order so a weight cap can stop each
// scan early; edges above cap (at cap too when cap_exclusive) are never
// candidates. The claimed task set is order-independent within one agent —
// claims are keyed by task, and each (agent, task) pair is one edge — so the
// outcome is identical to an (agent, task)-ordered scan.
template <class Allowed>
SearchOutcome layered_search(
    const DenseGraph& g, const std::vector<char>& agent_alive,
    const std::vector<char>& task_alive, const MatchState& m, Allowed&& allowed,
    double cap = std::numeric_limits<double>::infinity(),
    bool cap_exclusive = false) {
  SearchOutcome out;
  SearchScratch& sc = search_scratch();
  if (sc.claim_mark.size() < static_cast<std::size_t>(g.nt())) {
    sc.claim_mark.resize(static_cast<std::size_t>(g.nt()), 0);
    sc.claim_edge.resize(static_cast<std::size_t>(g.nt()));
  }
  ++sc.epoch;
  std::vector<int>& frontier = sc.frontier;
  std::vector<int>& claimed_now = sc.claimed_now;
  frontier.clear();
  for (int a = 0; a < g.na(); ++a)
    if (agent_alive[a] && m.at_agent[a] < 0) frontier.push_back(a);
  if (frontier.empty()) {
    out.layers = 1;  // the round that discovers there is nothing to expand
    return out;
  }
  const bool capped = cap != std::numeric_limits<double>::infinity();
  auto visit = [&](int a, int e) {
    int t = g.etask[e];
    if (!task_alive[t] || sc.claim_mark[t] == sc.epoch || m.at_agent[a] == e)
      return;
    if (!allowed(e)) return;
    sc.claim_mark[t] = sc.epoch;  // ascending frontier: first writer is lowest
    sc.claim_edge[t] = e;
    claimed_now.push_back(t);
  };
  while (true) {
    ++out.layers;
    claimed_now.clear();
    for (int a : frontier) {
      if (capped) {
        for (int k = g.abegin[a]; k < g.abegin[a + 1]; ++k) {
          int e = g.aw_order[k];
          double w = g.ew[e];
          if (cap_exclusive ? w >= cap : w > cap) break;
          visit(a, e);
        }
      } else {
        // Unbounded scans keep the contiguous edge-index walk: same claimed
        // set, better locality.
        for (int e = g.abegin[a]; e < g.abegin[a + 1]; ++e) visit(a, e);
      }
    }
    if (claimed_now.empty()) return out;  // no augmenting path
    std::sort(claimed_now.begin(), claimed_now.end());
    for (int t : claimed_now) {
      if (m.at_task[t] >= 0) continue;
      // Free task: walk claims and matched edges back to a free agent.
      int e = sc.claim_edge[t];
      while (true) {
        out.path.push_back(e);
        int a = g.eagent[e];
        if (m.at_agent[a] < 0) break;
        int em = m.at_agent[a];
        out.path.push_back(em);
        e = sc.claim_edge[g.etask[em]];
      }
      out.found = true;
      return out;
    }
    frontier.clear();
    for (int t : claimed_now) frontier.push_back(g.eagent[m.at_task[t]]);
    std::sort(frontier.begin(), frontier.end());
  }
}

// Applies an augmenting path: path edges outside m enter, path edges inside
// m leave; cardinality grows by one.
inline void flip_path(const DenseGraph& g, MatchState& m, const std::vector<int>& path) {
  std::vector<int> add;
  for (int e : path) {
    if (m.has(g, e))
      m.remove(g, e);
    else
      add.push_back(e);
  }
  for (int e : add) m.add(g, e);
}

// Deterministic maximum-cardinality matching on the alive subgraph.
inline MatchState max_matching(const DenseGraph& g,
                               const std::vector<char>& agent_alive,
                               const std::vector<char>& task_alive) {
  MatchState m(g);
  while (true) {
    SearchOutcome res = layered_search(
        g, agent_alive, task_alive, m,
        [&](int e) { return agent_alive[g.eagent[e]] && task_alive[g.etask[e]]; });
    if (!res.found) break;
    flip_path(g, m, res.path);
  }
  return m;
}

// Heaviest matched edge, ties toward the lowest (agent, task) pair. Requires
// a non-empty matching.
inline std::pair<double, int> heaviest_matched_edge(const DenseGraph& g,
                                                    const MatchState& m) {
  double maxw = 0.0;
  int ebar = -1;
  for (int a = 0; a < g.na(); ++a) {
    int e = m.at_agent[a];
    if (e < 0) continue;
    if (ebar < 0 || g.ew[e] > maxw) {
      maxw = g.ew[e];
      ebar = e;
    }
  }
  if (ebar < 0) throw std::logic_error("heaviest_matched_edge on empty matching");
  return {maxw, ebar};
}

struct DescentOutcome {
  double maxw = 0.0;       // bottleneck value of the alive subgraph
  int critical_edge = -1;  // edge index; matched, weight == maxw
};

// Bottleneck descent: repeatedly pick the heaviest matched edge and try to
// re-match without it using only strictly lighter alive edges; stops when
// that fails, which certifies the edge as critical and the matching as a
// bottleneck assignment of the alive subgraph. The working edge set at every
// probe is exactly the matching plus the alive edges strictly below the
// current heaviest matched weight, and that bound never increases — neither
// within one descent nor across descents separated by locking matched
// vertices — so membership is the weight cap itself and no explicit edge set
// is kept. m is mutated in place and holds a bottleneck assignment on return.
inline DescentOutcome bap_descent(const DenseGraph& g,
                                  const std::vector<char>& agent_alive,
                                  const std::vector<char>& task_alive,
                                  MatchState& m) {
  while (true) {
    auto [maxw, ebar] = heaviest_matched_edge(g, m);
    m.remove(g, ebar);
    // The exclusive cap keeps the probe edge itself (weight == maxw, now
    // unmatched) out of the search; matched edges are never scanned forward.
    SearchOutcome res =
        layered_search(g, agent_alive, task_alive, m,
                       [](int) { return true; }, maxw, /*cap_exclusive=*/true);
    if (!res.found) {
      m.add(g, ebar);
      return {maxw, ebar};
    }
    flip_path(g, m, res.path);
  }
}

// Theorem-style price positivity: no augmenting path relative to m \ {probe}
// inside the alive sublevel set (weights <= maxw) minus probe. m is restored
// before returning.
inline bool positive_price_scan(const DenseGraph& g,
                                const std::vector<char>& agent_alive,
                                const std::vector<char>& task_alive,
                                MatchState& m, double maxw, int probe) {
  m.remove(g, probe);
  SearchOutcome res =
      layered_search(g, agent_alive, task_alive, m,
                     [&](int e) { return e != probe; }, maxw,
                     /*cap_exclusive=*/false);
  m.add(g, probe);
  return !res.found;
}

}  // namespace bap::detail
