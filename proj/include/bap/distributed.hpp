#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "bap/graph.hpp"
#include "bap/seqbap.hpp"

namespace bap {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Undirected communication topology over agents (tasks are passive). The
// diameter is computed at construction; a disconnected link set throws
// DisconnectedTopology.
class CommGraph {
 public:
  CommGraph(std::vector<AgentId> nodes,
            std::vector<std::pair<AgentId, AgentId>> links);
  static CommGraph complete(std::vector<AgentId> nodes);

  const std::vector<AgentId>& nodes() const { return nodes_; }
  const std::vector<std::pair<AgentId, AgentId>>& links() const { return links_; }
  const std::vector<AgentId>& neighbours(AgentId a) const;
  bool are_neighbours(AgentId a, AgentId b) const;
  // Longest shortest path in hops; 0 for a single node.
  int diameter() const { return diameter_; }

 private:
  std::vector<AgentId> nodes_;                        // sorted unique
  std::vector<std::pair<AgentId, AgentId>> links_;    // canonical (lo, hi), sorted
  std::vector<std::vector<AgentId>> adjacency_;       // per node index, sorted
  int diameter_ = 0;
};

// Link agents whose positions are within radius of each other.
CommGraph build_comm_graph_radius(const std::vector<AgentId>& agents,
                                  const std::vector<Point2>& positions,
                                  double radius);

// Topology file format: header "agent_a,agent_b", one line per undirected
// link "A<int>,A<int>". Nodes are the union of the endpoints.
CommGraph load_topology(std::istream& in);
CommGraph load_topology_file(const std::string& path);

struct RoundRecord {
  int round = 0;            // 1-based
  std::string primitive;    // max_consensus | augpath_layer | batch_commit
  long long steps = 0;      // clock steps charged to this round
  long long messages = 0;   // directed agent-to-neighbour sends
};

struct SimTrace {
  long long clock_steps = 0;
  long long messages_sent = 0;
  std::vector<RoundRecord> rounds;
  // CSV: header "round,primitive,steps,messages".
  void write_csv(std::ostream& out) const;
};

struct SimOptions {
  // When set, a flooding round stops as soon as no mailbox changed instead of
  // always running diameter-many micro-steps. Changes step counts only, never
  // results; off by default (and off for all step-accounting guarantees).
  bool early_termination = false;
};

struct DistributedResult {
  SeqBapResult result;
  SimTrace trace;
};

// Synchronous message-passing run of the sequential bottleneck solver.
// Agents know only their own incident weights; every global decision is
// reached by flooding tokens over comm for diameter-many lockstep
// micro-steps (min 1), so one flooding round costs exactly max(D, 1) clock
// steps and clock_steps scales linearly in the diameter for a fixed
// instance. The result is identical to solve_seqbap(g, m0). Throws
// InvalidInput when comm's nodes differ from g's agents.
DistributedResult run_distributed_seqbap(const WeightedBipartiteGraph& g,
                                         const CommGraph& comm,
                                         const Matching& m0,
                                         const SimOptions& options = {});

}  // namespace bap
