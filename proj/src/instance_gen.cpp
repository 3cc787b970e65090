#include "bap/instance_gen.hpp"

#include <cmath>
#include <utility>

namespace bap {

CaseStudyInstance generate_instance(int n, std::uint64_t seed) {
  if (n <= 0) throw InvalidInput("instance size must be positive");
  CaseStudyInstance inst;
  inst.n = n;
  inst.seed = seed;
  SplitMix64 rng(seed);
  inst.agent_positions.reserve(n);
  inst.goal_positions.reserve(n);
  for (int i = 0; i < n; ++i) {
    double x = rng.next_unit() * 100.0;
    double y = rng.next_unit() * 100.0;
    inst.agent_positions.push_back({x, y});
  }
  for (int i = 0; i < n; ++i) {
    double x = rng.next_unit() * 100.0;
    double y = rng.next_unit() * 100.0;
    inst.goal_positions.push_back({x, y});
  }
  std::vector<AgentId> agents(n);
  std::vector<TaskId> tasks(n);
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) agents[i] = i;
  for (int j = 0; j < n; ++j) tasks[j] = j;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double dx = inst.agent_positions[i].x - inst.goal_positions[j].x;
      double dy = inst.agent_positions[i].y - inst.goal_positions[j].y;
      edges.push_back({{i, j}, std::sqrt(dx * dx + dy * dy)});
    }
  }
  inst.graph = WeightedBipartiteGraph(std::move(agents), std::move(tasks),
                                      std::move(edges));
  return inst;
}

}  // namespace bap
