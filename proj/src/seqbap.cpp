#include "bap/seqbap.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>

#include "search.hpp"

namespace bap {

SeqBapResult solve_seqbap(const WeightedBipartiteGraph& g, const Matching& m0) {
  detail::DenseGraph d = detail::DenseGraph::build(g);
  std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
  detail::MatchState full = detail::max_matching(d, agent_alive, task_alive);
  if (full.size < d.nt())
    throw SolverError("not every task can be matched");
  detail::MatchState m = detail::MatchState::from_matching(d, m0);
  if (m.size != full.size)
    throw InvalidInput("initial matching is not of maximum cardinality");

  SeqBapResult result;
  std::vector<Edge> locked_all;
  while (m.size > 0) {
    detail::DescentOutcome desc =
        detail::bap_descent(d, agent_alive, task_alive, m);
    // Matched edges whose deletion would worsen the alive subproblem. Tested
    // against the weight sublevel set of the alive subgraph including the
    // bottleneck weight itself, wider than the descent's strict working cap:
    // same-weight alternatives can still witness a zero price.
    std::vector<int> batch;
    bool locked_a_heaviest = false;
    for (int a = 0; a < d.na(); ++a) {
      int e = m.at_agent[a];
      if (e < 0) continue;
      if (detail::positive_price_scan(d, agent_alive, task_alive, m, desc.maxw, e)) {
        batch.push_back(e);
        locked_a_heaviest |= d.ew[e] == desc.maxw;
      }
    }
    // No forced heaviest edge means another bottleneck assignment avoids the
    // critical edge, so optimality of the final matching is no longer
    // certified; lock the critical edge anyway to guarantee progress.
    result.exact = result.exact && locked_a_heaviest;
    if (!locked_a_heaviest) batch.push_back(desc.critical_edge);

    SelectionBatch record;
    record.critical_edge = d.edge(desc.critical_edge);
    record.bottleneck_weight = desc.maxw;
    record.locked_edges.reserve(batch.size());
    for (int e : batch) record.locked_edges.push_back(d.edge(e));
    std::sort(record.locked_edges.begin(), record.locked_edges.end());
    result.selections.push_back(std::move(record));

    for (int e : batch) {
      agent_alive[d.eagent[e]] = 0;
      task_alive[d.etask[e]] = 0;
      m.remove(d, e);
      locked_all.push_back(d.edge(e));
    }
  }
  result.matching = Matching(std::move(locked_all));
  return result;
}

SeqBapResult solve_seqbap(const WeightedBipartiteGraph& g) {
  detail::DenseGraph d = detail::DenseGraph::build(g);
  std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
  detail::MatchState m0 = detail::max_matching(d, agent_alive, task_alive);
  return solve_seqbap(g, m0.to_matching(d));
}

namespace {

// Exhaustive recursion behind enumerate_seqbap_solutions. Vertex subsets are
// bitmasks over dense indices; solution matchings are canonical sorted edge
// index vectors, memoised per subproblem.
class SeqBapEnumerator {
 public:
  explicit SeqBapEnumerator(const detail::DenseGraph& d) : d_(d), tedges_(d.nt()) {
    for (int e = 0; e < d.ne(); ++e) tedges_[d.etask[e]].push_back(e);
  }

  const std::set<std::vector<int>>& solutions(std::uint64_t amask,
                                              std::uint64_t tmask) {
    auto key = std::make_pair(amask, tmask);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::set<std::vector<int>> out;
    if (tmask == 0) {
      out.insert(std::vector<int>{});  // exactly one solution: the empty one
      return memo_.emplace(key, std::move(out)).first->second;
    }
    std::vector<std::vector<int>> matchings;
    std::vector<int> cur;
    all_matchings(amask, tmask, cur, matchings);
    double bottleneck = std::numeric_limits<double>::infinity();
    std::vector<double> heaviest(matchings.size());
    for (std::size_t i = 0; i < matchings.size(); ++i) {
      double w = 0.0;
      for (int e : matchings[i]) w = std::max(w, d_.ew[e]);
      heaviest[i] = w;
      bottleneck = std::min(bottleneck, w);
    }
    for (std::size_t i = 0; i < matchings.size(); ++i) {
      if (heaviest[i] != bottleneck) continue;
      // Heaviest edges of this bottleneck assignment, each with its price:
      // how much the bottleneck value rises when the edge is deleted.
      std::vector<int> top;
      std::vector<double> price;
      for (int e : matchings[i]) {
        if (d_.ew[e] != bottleneck) continue;
        top.push_back(e);
        price.push_back(price_by_enumeration(matchings, heaviest, bottleneck, e));
      }
      double best = *std::max_element(price.begin(), price.end());
      for (std::size_t k = 0; k < top.size(); ++k) {
        if (price[k] != best) continue;
        int e = top[k];
        std::uint64_t am = amask & ~(std::uint64_t{1} << d_.eagent[e]);
        std::uint64_t tm = tmask & ~(std::uint64_t{1} << d_.etask[e]);
        for (const std::vector<int>& sub : solutions(am, tm)) {
          std::vector<int> whole = sub;
          whole.push_back(e);
          std::sort(whole.begin(), whole.end());
          out.insert(std::move(whole));
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  // Every matching that covers all tasks in tmask using agents from amask.
  void all_matchings(std::uint64_t amask, std::uint64_t tmask, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
    if (tmask == 0) {
      out.push_back(cur);
      return;
    }
    int t = std::countr_zero(tmask);
    for (int e : tedges_[t]) {
      int a = d_.eagent[e];
      if (!(amask >> a & 1)) continue;
      cur.push_back(e);
      all_matchings(amask & ~(std::uint64_t{1} << a),
                    tmask & ~(std::uint64_t{1} << t), cur, out);
      cur.pop_back();
    }
  }

  static double price_by_enumeration(const std::vector<std::vector<int>>& matchings,
                                     const std::vector<double>& heaviest,
                                     double bottleneck, int e) {
    double without = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < matchings.size(); ++i)
      if (std::find(matchings[i].begin(), matchings[i].end(), e) ==
          matchings[i].end())
        without = std::min(without, heaviest[i]);
    return without - bottleneck;  // +inf when every full matching needs e
  }

  const detail::DenseGraph& d_;
  std::vector<std::vector<int>> tedges_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::set<std::vector<int>>> memo_;
};

}  // namespace

std::set<Matching> enumerate_seqbap_solutions(const WeightedBipartiteGraph& g,
                                              int cap) {
  if (cap < 0 || cap > 20)
    throw InvalidInput("enumeration cap must lie in [0, 20]");
  detail::DenseGraph d = detail::DenseGraph::build(g);
  if (d.na() > cap || d.nt() > cap)
    throw EnumerationCapExceeded("instance too large to enumerate");
  std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
  if (detail::max_matching(d, agent_alive, task_alive).size < d.nt())
    throw SolverError("not every task can be matched");
  SeqBapEnumerator enumerator(d);
  std::uint64_t amask = (d.na() == 64) ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << d.na()) - 1;
  std::uint64_t tmask = (d.nt() == 64) ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << d.nt()) - 1;
  std::set<Matching> out;
  for (const std::vector<int>& sol : enumerator.solutions(amask, tmask)) {
    std::vector<Edge> edges;
    edges.reserve(sol.size());
    for (int e : sol) edges.push_back(d.edge(e));
    out.insert(Matching(std::move(edges)));
  }
  return out;
}

}  // namespace bap
