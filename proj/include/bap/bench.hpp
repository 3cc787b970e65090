#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bap/distributed.hpp"
#include "bap/graph.hpp"

namespace bap {

// One timed solver run on one generated instance.
struct BenchRecord {
  int n = 0;
  std::string algorithm;  // seqbap | naive | lexbap
  int realization = 0;
  double seconds = 0.0;
  bool exact = false;          // solver-certified lexicographic optimality
  long long clock_steps = -1;  // simulated runs only, -1 otherwise
};

// Times each requested algorithm on identical instances (realization r of
// size n uses seed base_seed + r). The timed region is the solve only; all
// algorithms consume the same parsed instance. When the instance weights are
// pairwise distinct the weight tuples of all solvers are cross-checked for
// exact equality (SolverError on mismatch). Records are ordered by
// (n, realization, algorithm); "exact" is accepted as an alias for "lexbap";
// zero realizations yield an empty list.
std::vector<BenchRecord> run_benchmark(const std::vector<int>& n_values,
                                       int realizations,
                                       const std::vector<std::string>& algorithms,
                                       std::uint64_t base_seed);

// Median seconds per (n, algorithm); pairs keyed canonically.
std::map<std::pair<int, std::string>, double> bench_medians(
    const std::vector<BenchRecord>& records);

// CSV: header "n,algorithm,realization,seconds,exact,clock_steps";
// clock_steps is left empty for non-simulated records.
void write_benchmark_csv(const std::vector<BenchRecord>& records,
                         std::ostream& out);

// Static log-log line chart of median seconds vs n, one polyline per
// algorithm.
void write_benchmark_svg(const std::vector<BenchRecord>& records,
                         std::ostream& out);

// Least-squares slope of log(median seconds) against log(n) for one
// algorithm; the growth exponent read off a log-log plot.
double fitted_loglog_slope(const std::vector<BenchRecord>& records,
                           const std::string& algorithm);

struct SimulationCampaignResult {
  SeqBapResult centralized;
  SimTrace trace_complete;  // complete topology, diameter 1
  SimTrace trace_radius;    // radius topology
  int radius_diameter = 0;
  bool matchings_equal = false;  // both simulated matchings equal centralized
};

// Generates the scenario, solves it centrally, then simulates it on the
// complete topology and on the positions-within-radius topology.
SimulationCampaignResult run_simulation_campaign(int n, std::uint64_t seed,
                                                 double radius);

// Self-check driver used by the CLI `verify` subcommand and the test suites:
// replays the definitional cross-checks (solution-set inclusion chain,
// augmenting-search price test vs definitional price, batch weight
// monotonicity, exactness flag vs enumerated solution-set uniqueness) on
// seeded instances with n up to n_max (capped at 7).
struct VerifyReport {
  int checks_run = 0;
  int failures = 0;
  std::string first_failure;  // human-readable, includes seed and instance CSV
  bool ok() const { return failures == 0; }
};

// The positive-price predicate is injectable so the harness can prove that a
// wrong predicate is caught and reported; the default is the library's own.
using PricePredicate =
    std::function<bool(const WeightedBipartiteGraph&, const Matching&, const Edge&)>;
VerifyReport verify(std::uint64_t base_seed, int seed_count, int n_max,
                    PricePredicate price_predicate = {});

}  // namespace bap
