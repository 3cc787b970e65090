#include "bap/baselines.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <utility>

#include "search.hpp"

namespace bap {

namespace {

// Recursively extends a partial matching until every task is covered.
void collect_task_perfect(const detail::DenseGraph& d,
                          const std::vector<std::vector<int>>& tedges, int t,
                          std::vector<char>& agent_used, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
  if (t == d.nt()) {
    out.push_back(cur);
    return;
  }
  for (int e : tedges[t]) {
    int a = d.eagent[e];
    if (agent_used[a]) continue;
    agent_used[a] = 1;
    cur.push_back(e);
    collect_task_perfect(d, tedges, t + 1, agent_used, cur, out);
    cur.pop_back();
    agent_used[a] = 0;
  }
}

std::vector<std::vector<int>> all_task_perfect_matchings(
    const detail::DenseGraph& d) {
  std::vector<std::vector<int>> tedges(d.nt());
  for (int e = 0; e < d.ne(); ++e) tedges[d.etask[e]].push_back(e);
  std::vector<std::vector<int>> out;
  std::vector<char> agent_used(d.na(), 0);
  std::vector<int> cur;
  collect_task_perfect(d, tedges, 0, agent_used, cur, out);
  return out;
}

Matching to_public_matching(const detail::DenseGraph& d, const std::vector<int>& edges) {
  std::vector<Edge> pub;
  pub.reserve(edges.size());
  for (int e : edges) pub.push_back(d.edge(e));
  return Matching(std::move(pub));
}

}  // namespace

SolutionSetReport brute_force_enumerate(const WeightedBipartiteGraph& g, int cap) {
  detail::DenseGraph d = detail::DenseGraph::build(g);
  if (d.na() > cap || d.nt() > cap)
    throw EnumerationCapExceeded("instance too large to enumerate");
  std::vector<std::vector<int>> matchings = all_task_perfect_matchings(d);
  if (matchings.empty())
    throw SolverError("not every task can be matched");
  SolutionSetReport report;
  double bottleneck = std::numeric_limits<double>::infinity();
  std::vector<WeightTuple> tuples;
  tuples.reserve(matchings.size());
  for (const std::vector<int>& m : matchings) {
    std::vector<double> ws;
    ws.reserve(m.size());
    double maxw = 0.0;
    for (int e : m) {
      ws.push_back(d.ew[e]);
      maxw = std::max(maxw, d.ew[e]);
    }
    tuples.emplace_back(std::move(ws));
    bottleneck = std::min(bottleneck, maxw);
  }
  WeightTuple best = tuples.front();
  for (const WeightTuple& t : tuples)
    if (t < best) best = t;
  report.lex_min_tuple = best;
  for (std::size_t i = 0; i < matchings.size(); ++i) {
    if (tuples[i].values().front() == bottleneck)
      report.bap_solutions.insert(to_public_matching(d, matchings[i]));
    if (tuples[i] == best)
      report.lexbap_solutions.insert(to_public_matching(d, matchings[i]));
  }
  return report;
}

namespace {

// Potential-based shortest-augmenting-path assignment over exact integers.
// Rows are assigned one by one; every comparison is exact, every tie resolves
// to the lowest column index, so results are deterministic. `cost` maps
// (row, col) to a non-negative cost, with `forbidden` as the infeasible
// sentinel (strictly larger than any full assignment of finite entries).
class HungarianSolver {
 public:
  HungarianSolver(int rows, int cols, std::function<const BigInt&(int, int)> cost,
                  BigInt forbidden)
      : rows_(rows), cols_(cols), cost_(std::move(cost)),
        forbidden_(std::move(forbidden)) {}

  // Returns col -> row (-1 for unassigned) and the total cost.
  std::pair<std::vector<int>, BigInt> run() {
    // 1-based arrays with column 0 as the virtual start column.
    std::vector<BigInt> u(rows_ + 1), v(cols_ + 1), minv(cols_ + 1);
    std::vector<int> p(cols_ + 1, -1), way(cols_ + 1, 0);
    BigInt cur;
    for (int i = 1; i <= rows_; ++i) {
      p[0] = i - 1;
      int j0 = 0;
      std::vector<char> used(cols_ + 1, 0);
      for (BigInt& x : minv) x = infinite_;
      do {
        used[j0] = 1;
        int i0 = p[j0], j1 = -1;
        const BigInt* delta = &infinite_;
        for (int j = 1; j <= cols_; ++j) {
          if (used[j]) continue;
          cur = cost_(i0, j - 1);
          cur -= u[i0 + 1];
          cur -= v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (minv[j] < *delta) {
            delta = &minv[j];
            j1 = j;
          }
        }
        cur = *delta;  // detach before mutating minv
        for (int j = 0; j <= cols_; ++j) {
          if (used[j]) {
            u[p[j] + 1] += cur;
            v[j] -= cur;
          } else {
            minv[j] -= cur;
          }
        }
        j0 = j1;
      } while (p[j0] != -1);
      for (int j1 = way[j0]; j0 != 0; j0 = j1, j1 = way[j0])
        p[j0] = p[j1];
    }
    BigInt total = 0;
    std::vector<int> row_of_col(cols_, -1);
    for (int j = 1; j <= cols_; ++j) {
      row_of_col[j - 1] = p[j];
      if (p[j] >= 0) total += cost_(p[j], j - 1);  // columns may stay free
    }
    return {std::move(row_of_col), std::move(total)};
  }

 private:
  int rows_, cols_;
  std::function<const BigInt&(int, int)> cost_;
  BigInt forbidden_;
  // Search sentinel: larger than any reachable reduced cost.
  BigInt infinite_ = forbidden_ * (rows_ + 1) + 1;
};

}  // namespace

LsapResult solve_lsap(const std::vector<std::vector<std::optional<BigInt>>>& cost) {
  const int agents = static_cast<int>(cost.size());
  if (agents == 0) throw InvalidInput("cost matrix has no rows");
  const int tasks = static_cast<int>(cost.front().size());
  if (tasks == 0) throw InvalidInput("cost matrix has no columns");
  if (agents < tasks)
    throw InvalidInput("cost matrix needs at least as many rows as columns");
  BigInt max_finite = 0;
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != tasks)
      throw InvalidInput("cost matrix rows differ in length");
    for (const auto& c : row) {
      if (!c) continue;
      if (*c < 0) throw InvalidInput("cost matrix entries must be non-negative");
      max_finite = std::max(max_finite, *c);
    }
  }
  // Any assignment touching a forbidden pair costs at least `forbidden`,
  // strictly more than any all-finite assignment, so feasibility is a single
  // comparison at the end.
  const BigInt forbidden = max_finite * (tasks + 1) + 1;
  // Internal orientation: rows = tasks (the smaller side), columns = agents.
  HungarianSolver solver(
      tasks, agents,
      [&](int t, int a) -> const BigInt& {
        const auto& c = cost[a][t];
        return c ? *c : forbidden;
      },
      forbidden);
  auto [task_of_agent, total] = solver.run();
  if (total >= forbidden)
    throw SolverError("no assignment avoids the forbidden pairs");
  std::vector<Edge> edges;
  edges.reserve(tasks);
  for (int a = 0; a < agents; ++a)
    if (task_of_agent[a] >= 0) edges.push_back({a, task_of_agent[a]});
  return {Matching(std::move(edges)), std::move(total)};
}

Matching solve_lexbap_exact(const WeightedBipartiteGraph& g) {
  const int na = static_cast<int>(g.agents().size());
  const int nt = static_cast<int>(g.tasks().size());
  {
    detail::DenseGraph d = detail::DenseGraph::build(g);
    std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
    if (detail::max_matching(d, agent_alive, task_alive).size < d.nt())
      throw SolverError("not every task can be matched");
  }
  // Position-value encoding over the dense ranks of every distinct weight of
  // the graph, ascending: the edge at rank r costs (nt + 1)^r. A matching has
  // at most nt edges of any one rank, so sums never carry between ranks and
  // total order equals descending-tuple lexicographic order. Walking edges in
  // ascending weight order lets one running power serve as each edge's cost,
  // advanced whenever the weight strictly increases.
  std::vector<std::size_t> order(g.edge_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return g.weights()[x] < g.weights()[y];
  });
  std::vector<std::vector<std::optional<BigInt>>> cost(
      na, std::vector<std::optional<BigInt>>(nt));
  BigInt p = 1;
  bool first = true;
  double prev = 0.0;
  for (std::size_t i : order) {
    const double w = g.weights()[i];
    if (!first && w != prev) p *= nt + 1;
    first = false;
    prev = w;
    const Edge& e = g.edges()[i];
    int a = static_cast<int>(std::lower_bound(g.agents().begin(), g.agents().end(),
                                              e.agent) - g.agents().begin());
    int t = static_cast<int>(std::lower_bound(g.tasks().begin(), g.tasks().end(),
                                              e.task) - g.tasks().begin());
    cost[a][t] = p;
  }
  LsapResult lsap = solve_lsap(cost);
  std::vector<Edge> edges;
  edges.reserve(lsap.matching.size());
  for (const Edge& e : lsap.matching.edges())
    edges.push_back({g.agents()[e.agent], g.tasks()[e.task]});
  return Matching(std::move(edges));
}

Matching solve_naive_greedy(const WeightedBipartiteGraph& g) {
  detail::DenseGraph d = detail::DenseGraph::build(g);
  std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
  if (detail::max_matching(d, agent_alive, task_alive).size < d.nt())
    throw SolverError("not every task can be matched");
  std::vector<Edge> picked;
  for (int remaining = d.nt(); remaining > 0; --remaining) {
    // From scratch every step: fresh matching, fresh descent.
    detail::MatchState m = detail::max_matching(d, agent_alive, task_alive);
    detail::DescentOutcome desc =
        detail::bap_descent(d, agent_alive, task_alive, m);
    int chosen = desc.critical_edge;
    for (int a = 0; a < d.na(); ++a) {
      int e = m.at_agent[a];
      if (e < 0 || d.ew[e] != desc.maxw) continue;
      if (detail::positive_price_scan(d, agent_alive, task_alive, m, desc.maxw, e)) {
        chosen = e;
        break;
      }
    }
    picked.push_back(d.edge(chosen));
    agent_alive[d.eagent[chosen]] = 0;
    task_alive[d.etask[chosen]] = 0;
  }
  return Matching(std::move(picked));
}

}  // namespace bap
