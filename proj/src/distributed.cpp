#include "bap/distributed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "bap/io.hpp"
#include "search.hpp"

namespace bap {

// ---------------------------------------------------------------------------
// Communication topology
// ---------------------------------------------------------------------------

CommGraph::CommGraph(std::vector<AgentId> nodes,
                     std::vector<std::pair<AgentId, AgentId>> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  if (nodes_.empty()) throw InvalidInput("topology needs at least one node");
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    throw InvalidInput("duplicate node in topology");
  auto index_of = [&](AgentId a) {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), a);
    if (it == nodes_.end() || *it != a)
      throw InvalidInput("link endpoint is not a node of the topology");
    return static_cast<int>(it - nodes_.begin());
  };
  for (auto& [a, b] : links_) {
    if (a == b) throw InvalidInput("self-link in topology");
    if (b < a) std::swap(a, b);
  }
  std::sort(links_.begin(), links_.end());
  if (std::adjacent_find(links_.begin(), links_.end()) != links_.end())
    throw InvalidInput("duplicate link in topology");
  adjacency_.resize(nodes_.size());
  for (const auto& [a, b] : links_) {
    adjacency_[index_of(a)].push_back(b);
    adjacency_[index_of(b)].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  // All-pairs BFS; the topology must be connected for flooding to terminate.
  const int n = static_cast<int>(nodes_.size());
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (AgentId vb : adjacency_[u]) {
        int v = index_of(vb);
        if (dist[v] >= 0) continue;
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
    for (int v = 0; v < n; ++v) {
      if (dist[v] < 0)
        throw DisconnectedTopology("communication topology is disconnected");
      diameter_ = std::max(diameter_, dist[v]);
    }
  }
}

CommGraph CommGraph::complete(std::vector<AgentId> nodes) {
  std::vector<std::pair<AgentId, AgentId>> links;
  std::sort(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      links.emplace_back(nodes[i], nodes[j]);
  return CommGraph(std::move(nodes), std::move(links));
}

const std::vector<AgentId>& CommGraph::neighbours(AgentId a) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), a);
  if (it == nodes_.end() || *it != a)
    throw InvalidInput("agent is not a node of the topology");
  return adjacency_[static_cast<std::size_t>(it - nodes_.begin())];
}

bool CommGraph::are_neighbours(AgentId a, AgentId b) const {
  const std::vector<AgentId>& nbrs = neighbours(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

CommGraph build_comm_graph_radius(const std::vector<AgentId>& agents,
                                  const std::vector<Point2>& positions,
                                  double radius) {
  if (agents.size() != positions.size())
    throw InvalidInput("one position per agent required");
  if (!(radius >= 0.0))
    throw InvalidInput("communication radius must be non-negative");
  std::vector<std::pair<AgentId, AgentId>> links;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = i + 1; j < agents.size(); ++j) {
      double dx = positions[i].x - positions[j].x;
      double dy = positions[i].y - positions[j].y;
      if (std::sqrt(dx * dx + dy * dy) <= radius)
        links.emplace_back(agents[i], agents[j]);
    }
  }
  try {
    return CommGraph(agents, std::move(links));
  } catch (const DisconnectedTopology&) {
    throw DisconnectedTopology("communication radius " + format_weight(radius) +
                               " leaves the topology disconnected");
  }
}

namespace {

AgentId parse_topology_agent(const std::string& field, int line_no) {
  if (field.empty() || field.front() != 'A')
    throw InvalidInput("topology line " + std::to_string(line_no) +
                       ": expected agent id like A3, got '" + field + "'");
  int value = 0;
  const char* first = field.data() + 1;
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw InvalidInput("topology line " + std::to_string(line_no) +
                       ": bad agent id '" + field + "'");
  return value;
}

}  // namespace

CommGraph load_topology(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  std::set<AgentId> nodes;
  std::vector<std::pair<AgentId, AgentId>> links;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "agent_a,agent_b")
        throw InvalidInput("topology line 1: expected header agent_a,agent_b");
      saw_header = true;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw InvalidInput("topology line " + std::to_string(line_no) +
                         ": expected two comma-separated fields");
    AgentId a = parse_topology_agent(line.substr(0, comma), line_no);
    AgentId b = parse_topology_agent(line.substr(comma + 1), line_no);
    nodes.insert(a);
    nodes.insert(b);
    links.emplace_back(a, b);
  }
  if (!saw_header) throw InvalidInput("topology file is empty");
  return CommGraph(std::vector<AgentId>(nodes.begin(), nodes.end()),
                   std::move(links));
}

CommGraph load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open topology file: " + path);
  return load_topology(in);
}

void SimTrace::write_csv(std::ostream& out) const {
  out << "round,primitive,steps,messages\n";
  for (const RoundRecord& r : rounds)
    out << r.round << ',' << r.primitive << ',' << r.steps << ',' << r.messages
        << '\n';
}

// ---------------------------------------------------------------------------
// Synchronous simulator
// ---------------------------------------------------------------------------

namespace {

// Everything agents exchange travels as tokens; a flooding round spreads the
// union of all injected tokens to every agent.
struct Token {
  enum Kind { kCandidate = 0, kClaim = 1, kFlag = 2 };
  int kind = kCandidate;
  double weight = 0.0;  // kCandidate only
  int agent = -1;       // dense agent index
  int task = -1;        // dense task index
  friend auto operator<=>(const Token&, const Token&) = default;
};

using TokenSet = std::set<Token>;

// Lockstep store-and-forward network. One round floods every injected token
// to all agents: max(diameter, 1) micro-steps, each delivering every agent's
// current knowledge to all its neighbours (2 * |links| directed sends per
// step). With early termination the round instead stops after the first
// micro-step that changes nothing.
class FloodNetwork {
 public:
  FloodNetwork(const CommGraph& comm, const std::vector<AgentId>& agents,
               bool early_termination)
      : early_(early_termination), diameter_(comm.diameter()) {
    auto dense = [&](AgentId a) {
      return static_cast<int>(
          std::lower_bound(agents.begin(), agents.end(), a) - agents.begin());
    };
    for (const auto& [a, b] : comm.links()) {
      if (!comm.are_neighbours(a, b))  // router refuses non-local delivery
        throw std::logic_error("link endpoints are not neighbours");
      links_.emplace_back(dense(a), dense(b));
    }
    n_ = static_cast<int>(agents.size());
  }

  // Floods `boxes` (one token set per agent) until shared, records one round
  // in the trace, and returns the common knowledge.
  TokenSet round(const std::string& primitive, std::vector<TokenSet> boxes,
                 SimTrace& trace) {
    long long steps = 0, messages = 0;
    const int budget = std::max(diameter_, 1);
    while (true) {
      std::vector<TokenSet> snapshot = boxes;
      bool changed = false;
      for (const auto& [u, v] : links_) {
        for (const Token& t : snapshot[u]) changed |= boxes[v].insert(t).second;
        for (const Token& t : snapshot[v]) changed |= boxes[u].insert(t).second;
        messages += 2;
      }
      ++steps;
      // The diameter budget alone certifies completion, so early termination
      // can only shorten a round, never lengthen it.
      if ((early_ && !changed) || steps >= budget) break;
    }
    for (int i = 1; i < n_; ++i)
      if (boxes[i] != boxes[0])
        throw std::logic_error("flooding round ended without consensus");
    trace.rounds.push_back({static_cast<int>(trace.rounds.size()) + 1, primitive,
                            steps, messages});
    trace.clock_steps += steps;
    trace.messages_sent += messages;
    return std::move(boxes[0]);
  }

 private:
  bool early_;
  int diameter_;
  int n_ = 0;
  std::vector<std::pair<int, int>> links_;  // dense indices
};

// Replicated public knowledge: everything every agent can derive from the
// announced initial assignment plus the token history. Weights never appear
// here. Kept per replica; lockstep execution must keep all copies equal.
struct PublicBoard {
  std::vector<char> agent_alive, task_alive;
  std::vector<int> task_of_agent, agent_of_task;  // matched pairs, -1 when free
  int matched = 0;

  friend bool operator==(const PublicBoard&, const PublicBoard&) = default;

  void add_pair(int a, int t) {
    task_of_agent[a] = t;
    agent_of_task[t] = a;
    ++matched;
  }
  void remove_pair(int a, int t) {
    task_of_agent[a] = -1;
    agent_of_task[t] = -1;
    --matched;
  }
};

// Public reasoning state of one agent: board, current consensus values,
// search scratch and the result assembled so far. Identical across replicas
// after every round by construction; checked by the driver.
struct Mind {
  PublicBoard pub;
  double maxw = 0.0;
  int ebar_a = -1, ebar_t = -1;  // consensus heaviest matched pair
  std::vector<int> claims;       // task -> claiming agent during a search
  std::vector<int> frontier;     // agents expanding in the next layer
  bool search_running = false, search_found = false;
  int probe_a = -1, probe_t = -1;     // pair excluded by the current search
  bool price_mode = false;            // weight-sublevel search instead of descent
  std::vector<std::pair<int, int>> batch;  // pairs found forced this iteration
  bool exact = true;
  std::vector<SelectionBatch> selections;
  std::vector<Edge> locked;

  friend bool operator==(const Mind&, const Mind&) = default;
};

// One simulated agent. Private state is limited to its incident edge weights
// and its descent working flags; everything else lives in the replicated
// Mind and changes only through token unions.
class Replica {
 public:
  Replica(int self, std::vector<std::pair<int, double>> incident,
          const std::vector<AgentId>& agent_ids, const std::vector<TaskId>& task_ids)
      : self_(self), inc_(std::move(incident)), in_working_(inc_.size(), 1),
        agent_ids_(agent_ids), task_ids_(task_ids) {}

  Mind mind;

  // --- contributions -------------------------------------------------------

  TokenSet offer_candidate() const {
    TokenSet out;
    int t = mind.pub.task_of_agent[self_];
    if (t >= 0) out.insert({Token::kCandidate, weight_of(t), self_, t});
    return out;
  }

  TokenSet offer_claims() const {
    TokenSet out;
    if (!std::binary_search(mind.frontier.begin(), mind.frontier.end(), self_))
      return out;
    for (std::size_t i = 0; i < inc_.size(); ++i) {
      int t = inc_[i].first;
      if (!mind.pub.task_alive[t]) continue;
      if (mind.claims[t] >= 0) continue;
      if (mind.pub.task_of_agent[self_] == t) continue;  // own matched edge
      if (self_ == mind.probe_a && t == mind.probe_t) continue;
      if (mind.price_mode ? inc_[i].second > mind.maxw : !in_working_[i]) continue;
      out.insert({Token::kClaim, 0.0, self_, t});
    }
    return out;
  }

  TokenSet offer_heaviest_flag() const {
    TokenSet out;
    for (const auto& [a, t] : mind.batch)
      if (a == self_ && weight_of(t) == mind.maxw)
        out.insert({Token::kFlag, 0.0, a, t});
    return out;
  }

  // --- public transitions --------------------------------------------------

  void absorb_consensus(const TokenSet& u) {
    mind.ebar_a = -1;
    for (const Token& tok : u) {
      if (tok.kind != Token::kCandidate) continue;
      if (mind.ebar_a < 0 || tok.weight > mind.maxw ||
          (tok.weight == mind.maxw &&
           std::pair(tok.agent, tok.task) < std::pair(mind.ebar_a, mind.ebar_t))) {
        mind.maxw = tok.weight;
        mind.ebar_a = tok.agent;
        mind.ebar_t = tok.task;
      }
    }
    // Shrink the private working set, then suspend the consensus pair.
    for (std::size_t i = 0; i < inc_.size(); ++i)
      if (in_working_[i] && inc_[i].second >= mind.maxw &&
          mind.pub.task_of_agent[self_] != inc_[i].first)
        in_working_[i] = 0;
    mind.pub.remove_pair(mind.ebar_a, mind.ebar_t);
  }

  void begin_search(int probe_a, int probe_t, bool price_mode) {
    mind.claims.assign(mind.pub.agent_of_task.size(), -1);
    mind.frontier.clear();
    for (std::size_t a = 0; a < mind.pub.task_of_agent.size(); ++a)
      if (mind.pub.agent_alive[a] && mind.pub.task_of_agent[a] < 0)
        mind.frontier.push_back(static_cast<int>(a));
    mind.search_running = true;
    mind.search_found = false;
    mind.probe_a = probe_a;
    mind.probe_t = probe_t;
    mind.price_mode = price_mode;
  }

  void absorb_layer(const TokenSet& u) {
    // Resolve every claim toward the lowest claiming agent.
    std::vector<int> claimed_now;
    for (const Token& tok : u) {
      if (tok.kind != Token::kClaim) continue;
      if (mind.claims[tok.task] < 0) {
        mind.claims[tok.task] = tok.agent;  // set order: lowest agent first
        claimed_now.push_back(tok.task);
      }
    }
    if (claimed_now.empty()) {
      mind.search_running = false;
      return;
    }
    std::sort(claimed_now.begin(), claimed_now.end());
    for (int t : claimed_now) {
      if (mind.pub.agent_of_task[t] >= 0) continue;
      // A price scan only asks whether a path exists; the board must stay
      // as it was so the probe pair can be restored. A descent restore
      // commits the re-matching.
      if (!mind.price_mode) apply_augmenting_path(t);
      mind.search_running = false;
      mind.search_found = true;
      return;
    }
    mind.frontier.clear();
    for (int t : claimed_now) mind.frontier.push_back(mind.pub.agent_of_task[t]);
    std::sort(mind.frontier.begin(), mind.frontier.end());
  }

  void finish_descent_iteration() {
    if (!mind.search_found)  // restore failed: the consensus pair is critical
      mind.pub.add_pair(mind.ebar_a, mind.ebar_t);
  }

  void finish_price_scan() {
    if (!mind.search_found) mind.batch.emplace_back(mind.probe_a, mind.probe_t);
    mind.pub.add_pair(mind.probe_a, mind.probe_t);
  }

  void absorb_commit(const TokenSet& u) {
    bool locked_a_heaviest = false;
    for (const Token& tok : u) locked_a_heaviest |= tok.kind == Token::kFlag;
    mind.exact = mind.exact && locked_a_heaviest;
    if (!locked_a_heaviest) mind.batch.emplace_back(mind.ebar_a, mind.ebar_t);

    SelectionBatch record;
    record.critical_edge = {agent_ids_[mind.ebar_a], task_ids_[mind.ebar_t]};
    record.bottleneck_weight = mind.maxw;
    for (const auto& [a, t] : mind.batch)
      record.locked_edges.push_back({agent_ids_[a], task_ids_[t]});
    std::sort(record.locked_edges.begin(), record.locked_edges.end());
    mind.selections.push_back(std::move(record));

    std::sort(mind.batch.begin(), mind.batch.end());
    for (const auto& [a, t] : mind.batch) {
      mind.pub.agent_alive[a] = 0;
      mind.pub.task_alive[t] = 0;
      mind.pub.remove_pair(a, t);
      mind.locked.push_back({agent_ids_[a], task_ids_[t]});
    }
    mind.batch.clear();
  }

 private:
  double weight_of(int t) const {
    for (const auto& [task, w] : inc_)
      if (task == t) return w;
    throw std::logic_error("agent asked for a weight it does not hold");
  }

  void apply_augmenting_path(int free_task) {
    // Walk claims and matched pairs back to a free agent, then flip.
    std::vector<std::pair<int, int>> unmatched, matched;
    int t = free_task;
    while (true) {
      int a = mind.claims[t];
      unmatched.emplace_back(a, t);
      int tm = mind.pub.task_of_agent[a];
      if (tm < 0) break;
      matched.emplace_back(a, tm);
      t = tm;
    }
    for (const auto& [a, tm] : matched) mind.pub.remove_pair(a, tm);
    for (const auto& [a, tu] : unmatched) mind.pub.add_pair(a, tu);
  }

  int self_;
  std::vector<std::pair<int, double>> inc_;  // (dense task, weight), private
  std::vector<char> in_working_;             // private descent flags
  const std::vector<AgentId>& agent_ids_;
  const std::vector<TaskId>& task_ids_;
};

}  // namespace

DistributedResult run_distributed_seqbap(const WeightedBipartiteGraph& g,
                                         const CommGraph& comm,
                                         const Matching& m0,
                                         const SimOptions& options) {
  if (comm.nodes() != g.agents())
    throw InvalidInput("topology nodes must equal the graph's agents");
  detail::DenseGraph d = detail::DenseGraph::build(g);
  {
    std::vector<char> agent_alive(d.na(), 1), task_alive(d.nt(), 1);
    detail::MatchState full = detail::max_matching(d, agent_alive, task_alive);
    if (full.size < d.nt())
      throw SolverError("not every task can be matched");
    if (detail::MatchState::from_matching(d, m0).size != full.size)
      throw InvalidInput("initial matching is not of maximum cardinality");
  }

  FloodNetwork net(comm, g.agents(), options.early_termination);
  std::vector<Replica> replicas;
  replicas.reserve(d.na());
  for (int a = 0; a < d.na(); ++a) {
    std::vector<std::pair<int, double>> incident;
    for (int e = d.abegin[a]; e < d.abegin[a + 1]; ++e)
      incident.emplace_back(d.etask[e], d.ew[e]);
    replicas.emplace_back(a, std::move(incident), g.agents(), g.tasks());
  }
  for (Replica& r : replicas) {
    r.mind.pub.agent_alive.assign(d.na(), 1);
    r.mind.pub.task_alive.assign(d.nt(), 1);
    r.mind.pub.task_of_agent.assign(d.na(), -1);
    r.mind.pub.agent_of_task.assign(d.nt(), -1);
  }
  for (const Edge& e : m0.edges()) {
    int idx = d.edge_index(e);
    for (Replica& r : replicas) r.mind.pub.add_pair(d.eagent[idx], d.etask[idx]);
  }

  SimTrace trace;
  auto run_round = [&](const char* primitive, auto offer, auto absorb) {
    std::vector<TokenSet> boxes;
    boxes.reserve(replicas.size());
    for (Replica& r : replicas) boxes.push_back(offer(r));
    TokenSet u = net.round(primitive, std::move(boxes), trace);
    for (Replica& r : replicas) absorb(r, u);
    for (const Replica& r : replicas)
      if (!(r.mind == replicas.front().mind))
        throw std::logic_error("replicas diverged after a round");
  };
  auto run_search = [&](int probe_a, int probe_t, bool price_mode) {
    for (Replica& r : replicas) r.begin_search(probe_a, probe_t, price_mode);
    while (replicas.front().mind.search_running)
      run_round("augpath_layer", [](Replica& r) { return r.offer_claims(); },
                [](Replica& r, const TokenSet& u) { r.absorb_layer(u); });
  };

  while (replicas.front().mind.pub.matched > 0) {
    // Bottleneck descent on the alive subgraph.
    while (true) {
      run_round("max_consensus", [](Replica& r) { return r.offer_candidate(); },
                [](Replica& r, const TokenSet& u) { r.absorb_consensus(u); });
      const Mind& m = replicas.front().mind;
      run_search(m.ebar_a, m.ebar_t, /*price_mode=*/false);
      if (!replicas.front().mind.search_found) break;
    }
    for (Replica& r : replicas) r.finish_descent_iteration();

    // Price scan of every matched pair against the weight sublevel set.
    std::vector<std::pair<int, int>> pairs;
    const PublicBoard& pub = replicas.front().mind.pub;
    for (std::size_t a = 0; a < pub.task_of_agent.size(); ++a)
      if (pub.task_of_agent[a] >= 0)
        pairs.emplace_back(static_cast<int>(a), pub.task_of_agent[a]);
    for (const auto& [a, t] : pairs) {
      for (Replica& r : replicas) r.mind.pub.remove_pair(a, t);
      run_search(a, t, /*price_mode=*/true);
      for (Replica& r : replicas) r.finish_price_scan();
    }

    run_round("batch_commit", [](Replica& r) { return r.offer_heaviest_flag(); },
              [](Replica& r, const TokenSet& u) { r.absorb_commit(u); });
  }

  const Mind& final_mind = replicas.front().mind;
  DistributedResult out;
  out.result.matching = Matching(final_mind.locked);
  out.result.exact = final_mind.exact;
  out.result.selections = final_mind.selections;
  out.trace = std::move(trace);
  return out;
}

}  // namespace bap
