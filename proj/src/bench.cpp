#include "bap/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "bap/baselines.hpp"
#include "bap/bottleneck.hpp"
#include "bap/instance_gen.hpp"
#include "bap/io.hpp"
#include "bap/matching_ops.hpp"
#include "bap/seqbap.hpp"

namespace bap {

namespace {

// Runs one solver; the returned flag is true when the algorithm certifies
// its output as the unique lexicographic optimum.
std::pair<Matching, bool> run_algorithm(const std::string& algorithm,
                                        const WeightedBipartiteGraph& g) {
  if (algorithm == "seqbap") {
    SeqBapResult r = solve_seqbap(g);
    return {std::move(r.matching), r.exact};
  }
  if (algorithm == "naive") return {solve_naive_greedy(g), false};
  if (algorithm == "lexbap") return {solve_lexbap_exact(g), true};
  throw InvalidInput("unknown algorithm: " + algorithm);
}

bool weights_pairwise_distinct(const WeightedBipartiteGraph& g) {
  std::vector<double> ws = g.weights();
  std::sort(ws.begin(), ws.end());
  return std::adjacent_find(ws.begin(), ws.end()) == ws.end();
}

}  // namespace

std::vector<BenchRecord> run_benchmark(const std::vector<int>& n_values,
                                       int realizations,
                                       const std::vector<std::string>& algorithms,
                                       std::uint64_t base_seed) {
  if (n_values.empty()) throw InvalidInput("need at least one instance size");
  if (realizations < 0) throw InvalidInput("realization count cannot be negative");
  if (algorithms.empty()) throw InvalidInput("need at least one algorithm");
  std::vector<std::string> algos = algorithms;
  for (std::string& a : algos)
    if (a == "exact") a = "lexbap";
  std::sort(algos.begin(), algos.end());
  algos.erase(std::unique(algos.begin(), algos.end()), algos.end());
  for (const std::string& a : algos)
    if (a != "seqbap" && a != "naive" && a != "lexbap")
      throw InvalidInput("unknown algorithm: " + a);
  std::vector<BenchRecord> records;
  records.reserve(n_values.size() * algos.size() * static_cast<std::size_t>(realizations));
  for (int n : n_values) {
    for (int r = 0; r < realizations; ++r) {
      CaseStudyInstance inst = generate_instance(n, base_seed + static_cast<std::uint64_t>(r));
      std::vector<Matching> produced;
      for (const std::string& algo : algos) {
        auto t0 = std::chrono::steady_clock::now();
        auto [m, certified] = run_algorithm(algo, inst.graph);
        auto t1 = std::chrono::steady_clock::now();
        records.push_back({n, algo, r,
                           std::chrono::duration<double>(t1 - t0).count(),
                           certified, -1});
        produced.push_back(std::move(m));
      }
      if (weights_pairwise_distinct(inst.graph)) {
        WeightTuple reference = WeightTuple::of(inst.graph, produced.front());
        for (const Matching& m : produced)
          if (!(WeightTuple::of(inst.graph, m) == reference))
            throw SolverError("solvers disagree on a distinct-weight instance (n=" +
                              std::to_string(n) + ", realization " +
                              std::to_string(r) + ")");
      }
    }
  }
  return records;
}

std::map<std::pair<int, std::string>, double> bench_medians(
    const std::vector<BenchRecord>& records) {
  std::map<std::pair<int, std::string>, std::vector<double>> samples;
  for (const BenchRecord& r : records)
    samples[{r.n, r.algorithm}].push_back(r.seconds);
  std::map<std::pair<int, std::string>, double> out;
  for (auto& [key, xs] : samples) {
    std::sort(xs.begin(), xs.end());
    std::size_t k = xs.size();
    out[key] = (k % 2 == 1) ? xs[k / 2] : (xs[k / 2 - 1] + xs[k / 2]) / 2.0;
  }
  return out;
}

void write_benchmark_csv(const std::vector<BenchRecord>& records,
                         std::ostream& out) {
  out << "n,algorithm,realization,seconds,exact,clock_steps\n";
  for (const BenchRecord& r : records) {
    out << r.n << ',' << r.algorithm << ',' << r.realization << ','
        << format_weight(r.seconds) << ',' << (r.exact ? 1 : 0) << ',';
    if (r.clock_steps >= 0) out << r.clock_steps;
    out << '\n';
  }
}

namespace {

constexpr double kMinPlottedSeconds = 1e-9;  // keeps log() finite on 0 timings

const char* algorithm_colour(const std::string& algorithm) {
  if (algorithm == "seqbap") return "#1f77b4";
  if (algorithm == "naive") return "#d62728";
  if (algorithm == "lexbap") return "#2ca02c";
  return "#7f7f7f";
}

}  // namespace

void write_benchmark_svg(const std::vector<BenchRecord>& records,
                         std::ostream& out) {
  auto medians = bench_medians(records);
  if (medians.empty()) throw InvalidInput("no benchmark records to plot");
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& [key, med] : medians) {
    double x = std::log10(static_cast<double>(key.first));
    double y = std::log10(std::max(med, kMinPlottedSeconds));
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
  const double left = 70, right = 620, top = 40, bottom = 420;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"680\" height=\"480\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"680\" height=\"480\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << left
      << "\" y2=\"" << top << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (left + right) / 2
      << "\" y=\"460\" text-anchor=\"middle\">instance size n (log scale)</text>\n";
  out << "<text x=\"16\" y=\"" << (top + bottom) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (top + bottom) / 2 << ")\">median seconds (log scale)</text>\n";

  std::vector<int> ns;
  for (const auto& [key, med] : medians) ns.push_back(key.first);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (int n : ns) {
    double x = sx(std::log10(static_cast<double>(n)));
    out << "<line x1=\"" << x << "\" y1=\"" << bottom << "\" x2=\"" << x
        << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << bottom + 20
        << "\" text-anchor=\"middle\">" << n << "</text>\n";
  }
  for (int dec = static_cast<int>(std::floor(ymin)); dec <= static_cast<int>(std::ceil(ymax)); ++dec) {
    if (dec < ymin - 1e-9 || dec > ymax + 1e-9) continue;
    double y = sy(dec);
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << right
        << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">1e" << dec << "</text>\n";
  }

  std::vector<std::string> algos;
  for (const auto& [key, med] : medians) algos.push_back(key.second);
  std::sort(algos.begin(), algos.end());
  algos.erase(std::unique(algos.begin(), algos.end()), algos.end());
  double legend_y = top + 10;
  for (const std::string& algo : algos) {
    out << "<polyline fill=\"none\" stroke=\"" << algorithm_colour(algo)
        << "\" stroke-width=\"2\" points=\"";
    for (int n : ns) {
      auto it = medians.find({n, algo});
      if (it == medians.end()) continue;
      out << sx(std::log10(static_cast<double>(n))) << ','
          << sy(std::log10(std::max(it->second, kMinPlottedSeconds))) << ' ';
    }
    out << "\"/>\n";
    for (int n : ns) {
      auto it = medians.find({n, algo});
      if (it == medians.end()) continue;
      out << "<circle cx=\"" << sx(std::log10(static_cast<double>(n))) << "\" cy=\""
          << sy(std::log10(std::max(it->second, kMinPlottedSeconds)))
          << "\" r=\"3\" fill=\"" << algorithm_colour(algo) << "\"/>\n";
    }
    out << "<rect x=\"" << right - 110 << "\" y=\"" << legend_y - 9
        << "\" width=\"12\" height=\"12\" fill=\"" << algorithm_colour(algo)
        << "\"/>\n";
    out << "<text x=\"" << right - 92 << "\" y=\"" << legend_y + 2 << "\">" << algo
        << "</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
}

double fitted_loglog_slope(const std::vector<BenchRecord>& records,
                           const std::string& algorithm) {
  auto medians = bench_medians(records);
  std::vector<std::pair<double, double>> pts;
  for (const auto& [key, med] : medians)
    if (key.second == algorithm)
      pts.emplace_back(std::log(static_cast<double>(key.first)),
                       std::log(std::max(med, kMinPlottedSeconds)));
  if (pts.size() < 2)
    throw InvalidInput("slope fit needs at least two instance sizes");
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

SimulationCampaignResult run_simulation_campaign(int n, std::uint64_t seed,
                                                 double radius) {
  CaseStudyInstance inst = generate_instance(n, seed);
  Matching m0 = maximum_cardinality_matching(inst.graph);
  SimulationCampaignResult out;
  out.centralized = solve_seqbap(inst.graph, m0);
  CommGraph complete = CommGraph::complete(inst.graph.agents());
  CommGraph within_radius =
      build_comm_graph_radius(inst.graph.agents(), inst.agent_positions, radius);
  out.radius_diameter = within_radius.diameter();
  DistributedResult dc = run_distributed_seqbap(inst.graph, complete, m0);
  DistributedResult dr = run_distributed_seqbap(inst.graph, within_radius, m0);
  out.trace_complete = dc.trace;
  out.trace_radius = dr.trace;
  out.matchings_equal = dc.result.matching == out.centralized.matching &&
                        dr.result.matching == out.centralized.matching;
  return out;
}

namespace {

// Complete bipartite n x n instance with small integer weights: lots of ties,
// the regime where exactness flags and solution-set distinctions matter.
WeightedBipartiteGraph tie_heavy_instance(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<AgentId> agents(n);
  std::vector<TaskId> tasks(n);
  for (int i = 0; i < n; ++i) agents[i] = i;
  for (int j = 0; j < n; ++j) tasks[j] = j;
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      edges.push_back({{i, j}, static_cast<double>(rng.next_int(1, 4))});
  return WeightedBipartiteGraph(std::move(agents), std::move(tasks), std::move(edges));
}

std::string describe_instance(const WeightedBipartiteGraph& g, std::uint64_t seed,
                              const std::string& kind, const std::string& what) {
  std::ostringstream os;
  os << what << " (seed " << seed << ", " << kind << " instance)\n";
  save_instance(g, os);
  return os.str();
}

class VerifyRun {
 public:
  explicit VerifyRun(PricePredicate predicate) : predicate_(std::move(predicate)) {}

  void check(bool condition, const WeightedBipartiteGraph& g, std::uint64_t seed,
             const std::string& kind, const std::string& what) {
    ++report_.checks_run;
    if (condition) return;
    ++report_.failures;
    if (report_.first_failure.empty())
      report_.first_failure = describe_instance(g, seed, kind, what);
  }

  void run_instance(const WeightedBipartiteGraph& g, std::uint64_t seed,
                    const std::string& kind) {
    SolutionSetReport sets = brute_force_enumerate(g);
    SeqBapResult engine = solve_seqbap(g);

    // Solution-set inclusion chain, engine output inside the middle set.
    bool small_enough = g.agents().size() <= 6 && g.tasks().size() <= 6;
    std::set<Matching> seq_set;
    if (small_enough) {
      seq_set = enumerate_seqbap_solutions(g);
      check(std::includes(sets.bap_solutions.begin(), sets.bap_solutions.end(),
                          seq_set.begin(), seq_set.end()),
            g, seed, kind, "sequential solutions not all bottleneck-optimal");
      check(std::includes(seq_set.begin(), seq_set.end(),
                          sets.lexbap_solutions.begin(), sets.lexbap_solutions.end()),
            g, seed, kind, "lexicographic solutions not all sequential");
      check(seq_set.count(engine.matching) == 1, g, seed, kind,
            "engine matching missing from the enumerated sequential set");
      // Exactness flag == enumerated solution-set uniqueness.
      check(engine.exact == (seq_set.size() == 1), g, seed, kind,
            "exactness flag disagrees with solution-set uniqueness");
    }
    if (engine.exact) {
      check(sets.lexbap_solutions.size() == 1 &&
                *sets.lexbap_solutions.begin() == engine.matching,
            g, seed, kind, "exact engine run is not the unique lexicographic optimum");
    }

    // Augmenting-search price test against the definitional price.
    Matching bottleneck_m = solve_bap(g).matching;
    for (const Edge& e : g.edges()) {
      PriceOfAbsence p = price_of_absence(g, e);
      bool positive = p.is_infinite() || p.value > 0.0;
      check(predicate_(g, bottleneck_m, e) == positive, g, seed, kind,
            "search price test disagrees with definitional price");
    }

    // Batch bottleneck weights never increase.
    for (std::size_t i = 1; i < engine.selections.size(); ++i)
      check(engine.selections[i].bottleneck_weight <=
                engine.selections[i - 1].bottleneck_weight,
            g, seed, kind, "bottleneck weight increased between batches");
  }

  VerifyReport report() && { return std::move(report_); }

 private:
  PricePredicate predicate_;
  VerifyReport report_;
};

}  // namespace

VerifyReport verify(std::uint64_t base_seed, int seed_count, int n_max,
                    PricePredicate price_predicate) {
  if (seed_count < 1) throw InvalidInput("need at least one seed");
  n_max = std::clamp(n_max, 2, 7);
  if (!price_predicate)
    price_predicate = [](const WeightedBipartiteGraph& g, const Matching& m,
                         const Edge& e) { return has_positive_price(g, m, e); };
  VerifyRun run(std::move(price_predicate));
  for (int s = 0; s < seed_count; ++s) {
    std::uint64_t seed = base_seed + static_cast<std::uint64_t>(s);
    int n = 2 + s % (n_max - 1);
    run.run_instance(generate_instance(n, seed).graph, seed, "planar");
    int tie_n = 2 + s % (std::min(n_max, 5) - 1);
    run.run_instance(tie_heavy_instance(tie_n, seed), seed, "tie-heavy");
  }
  return std::move(run).report();
}

}  // namespace bap
