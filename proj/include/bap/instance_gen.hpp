#pragma once

#include <cstdint>
#include <vector>

#include "bap/distributed.hpp"
#include "bap/graph.hpp"

namespace bap {

// SplitMix64 (Steele, Lea & Flood's 64-bit mixer): tiny, seedable and
// bit-portable across platforms, unlike the std:: distributions whose output
// is implementation-defined. Used for every randomized artifact in this
// project.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] by rejection-free modulo of a 64-bit draw
  // (bias < 2^-50 for the tiny ranges used here, and fully deterministic).
  int next_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

// Random planar assignment scenario: n agents and n goals uniform in
// [0,100]^2, complete bipartite graph, Euclidean distances as weights.
// Draw order is fixed (agent points first, then goal points, x before y),
// so a (n, seed) pair always yields the same instance byte for byte.
// Campaigns split streams by realization: realization r uses seed + r.
struct CaseStudyInstance {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<Point2> agent_positions;  // agent i at index i
  std::vector<Point2> goal_positions;   // task j at index j
  WeightedBipartiteGraph graph;
};

CaseStudyInstance generate_instance(int n, std::uint64_t seed);

}  // namespace bap
