// Command-line front end: instance generation, solving, benchmarking,
// distributed simulation and self-verification.
//
// Exit codes: 0 success, 1 solver failure (including disconnected
// topologies), 2 verification failure, 3 bad input or bad usage.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bap/baselines.hpp"
#include "bap/bench.hpp"
#include "bap/bottleneck.hpp"
#include "bap/distributed.hpp"
#include "bap/errors.hpp"
#include "bap/instance_gen.hpp"
#include "bap/io.hpp"
#include "bap/matching_ops.hpp"
#include "bap/seqbap.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitVerify = 2;
constexpr int kExitBadInput = 3;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw bap::InvalidInput("cannot open output file: " + path);
  return out;
}

nlohmann::json edge_json(const bap::Edge& e) {
  return {{"agent", e.agent}, {"task", e.task}};
}

nlohmann::json matching_json(const bap::WeightedBipartiteGraph& g,
                             const bap::Matching& m) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const bap::Edge& e : m.edges()) {
    nlohmann::json p = edge_json(e);
    p["weight"] = g.weight(e);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void print_matching_text(const bap::WeightedBipartiteGraph& g,
                         const bap::Matching& m) {
  std::cout << "agent,task,weight\n";
  for (const bap::Edge& e : m.edges())
    std::cout << 'A' << e.agent << ",T" << e.task << ','
              << bap::format_weight(g.weight(e)) << '\n';
}

int cmd_solve(const std::string& in_path, const std::string& algo, bool as_json) {
  bap::WeightedBipartiteGraph g = bap::load_instance_file(in_path);
  nlohmann::json out;
  out["algorithm"] = algo;
  bap::Matching matching;
  if (algo == "bap") {
    bap::BottleneckCertificate cert = bap::solve_bap(g);
    matching = cert.matching;
    out["exact"] = nullptr;
    out["bottleneck_weight"] = cert.bottleneck_weight;
    out["critical_edge"] = edge_json(cert.bottleneck_edge);
    out["batches"] = nlohmann::json::array();
  } else if (algo == "seqbap") {
    bap::SeqBapResult r = bap::solve_seqbap(g);
    matching = r.matching;
    out["exact"] = r.exact;
    nlohmann::json batches = nlohmann::json::array();
    for (const bap::SelectionBatch& b : r.selections) {
      nlohmann::json jb;
      jb["critical_edge"] = edge_json(b.critical_edge);
      jb["bottleneck_weight"] = b.bottleneck_weight;
      jb["locked_edges"] = nlohmann::json::array();
      for (const bap::Edge& e : b.locked_edges)
        jb["locked_edges"].push_back(edge_json(e));
      batches.push_back(std::move(jb));
    }
    out["batches"] = std::move(batches);
  } else if (algo == "lexbap") {
    matching = bap::solve_lexbap_exact(g);
    out["exact"] = true;
    out["batches"] = nlohmann::json::array();
  } else {  // "naive", restricted by the CLI option check
    matching = bap::solve_naive_greedy(g);
    out["exact"] = nullptr;
    out["batches"] = nlohmann::json::array();
  }
  bap::WeightTuple tuple = bap::WeightTuple::of(g, matching);
  if (as_json) {
    out["matching"] = matching_json(g, matching);
    out["weight_tuple"] = tuple.values();
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  print_matching_text(g, matching);
  std::cout << "# weight_tuple:";
  for (double w : tuple.values()) std::cout << ' ' << bap::format_weight(w);
  std::cout << '\n';
  if (out.contains("bottleneck_weight"))
    std::cout << "# bottleneck_weight: "
              << bap::format_weight(out["bottleneck_weight"].get<double>()) << '\n';
  if (out["exact"].is_boolean())
    std::cout << "# exact: " << (out["exact"].get<bool>() ? "true" : "false")
              << '\n';
  return kExitOk;
}

int cmd_bench(const std::vector<int>& n_list, int reps,
              std::vector<std::string> algos, std::uint64_t seed,
              const std::string& out_path, const std::string& svg_path) {
  if (algos.empty()) algos = {"seqbap", "naive", "lexbap"};
  std::vector<bap::BenchRecord> records =
      bap::run_benchmark(n_list, reps, algos, seed);
  if (!out_path.empty()) {
    std::ofstream out = open_output(out_path);
    bap::write_benchmark_csv(records, out);
  } else {
    bap::write_benchmark_csv(records, std::cout);
  }
  if (!svg_path.empty()) {
    std::ofstream out = open_output(svg_path);
    bap::write_benchmark_svg(records, out);
  }
  // Median alongside mean per (n, algorithm), on stderr so stdout stays CSV.
  auto medians = bap::bench_medians(records);
  std::map<std::pair<int, std::string>, std::pair<double, int>> sums;
  for (const bap::BenchRecord& r : records) {
    auto& [total, count] = sums[{r.n, r.algorithm}];
    total += r.seconds;
    ++count;
  }
  for (const auto& [key, med] : medians)
    std::cerr << "n=" << key.first << " algorithm=" << key.second
              << " median_s=" << bap::format_weight(med) << " mean_s="
              << bap::format_weight(sums[key].first / sums[key].second) << '\n';
  return kExitOk;
}

int cmd_simulate(int n, std::uint64_t seed, double radius,
                 const std::string& topology_path, const std::string& trace_path,
                 const std::string& trace_complete_path) {
  bap::CaseStudyInstance inst = bap::generate_instance(n, seed);
  bap::Matching m0 = bap::maximum_cardinality_matching(inst.graph);
  bap::SeqBapResult centralized = bap::solve_seqbap(inst.graph, m0);

  bap::CommGraph complete = bap::CommGraph::complete(inst.graph.agents());
  std::optional<bap::CommGraph> sparse;
  if (!topology_path.empty()) {
    sparse.emplace(bap::load_topology_file(topology_path));
  } else {
    sparse.emplace(bap::build_comm_graph_radius(inst.graph.agents(),
                                                inst.agent_positions, radius));
  }
  bap::DistributedResult on_complete =
      bap::run_distributed_seqbap(inst.graph, complete, m0);
  bap::DistributedResult on_sparse =
      bap::run_distributed_seqbap(inst.graph, *sparse, m0);

  bool matchings_equal = on_complete.result.matching == centralized.matching &&
                         on_sparse.result.matching == centralized.matching;
  std::cout << "diameter_complete=" << complete.diameter()
            << " diameter_sparse=" << sparse->diameter() << '\n';
  std::cout << "clock_steps_complete=" << on_complete.trace.clock_steps
            << " clock_steps_sparse=" << on_sparse.trace.clock_steps << '\n';
  std::cout << "step_ratio="
            << bap::format_weight(
                   static_cast<double>(on_sparse.trace.clock_steps) /
                   static_cast<double>(on_complete.trace.clock_steps))
            << '\n';
  std::cout << "messages_complete=" << on_complete.trace.messages_sent
            << " messages_sparse=" << on_sparse.trace.messages_sent << '\n';
  std::cout << "matchings_equal_centralized="
            << (matchings_equal ? "true" : "false") << '\n';
  std::cout << "exact=" << (centralized.exact ? "true" : "false") << '\n';
  if (!trace_path.empty()) {
    std::ofstream out = open_output(trace_path);
    on_sparse.trace.write_csv(out);
  }
  if (!trace_complete_path.empty()) {
    std::ofstream out = open_output(trace_complete_path);
    on_complete.trace.write_csv(out);
  }
  if (!matchings_equal) {
    std::cerr << "error: simulated matchings diverged from the centralized run\n";
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_verify(std::uint64_t seed_base, int seeds, int n_max) {
  bap::VerifyReport report = bap::verify(seed_base, seeds, n_max);
  std::cout << "checks_run=" << report.checks_run
            << " failures=" << report.failures << '\n';
  if (!report.ok()) {
    std::cerr << report.first_failure << '\n';
    return kExitVerify;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bottleneck assignment toolbox"};
  app.require_subcommand(1);

  // gen
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random planar instance");
  gen->add_option("--n", gen_n, "number of agents and tasks")->required();
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "output CSV path (default: stdout)");

  // solve
  std::string solve_in, solve_algo;
  bool solve_json = false;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("--in", solve_in, "instance CSV path")->required();
  solve->add_option("--algo", solve_algo, "bap | seqbap | lexbap | naive")
      ->required()
      ->check(CLI::IsMember({"bap", "seqbap", "lexbap", "naive"}));
  solve->add_flag("--json", solve_json, "emit JSON instead of text");

  // bench
  std::vector<int> bench_n;
  int bench_reps = 20;
  std::vector<std::string> bench_algos;
  std::uint64_t bench_seed = 1;
  std::string bench_out, bench_svg;
  CLI::App* bench = app.add_subcommand("bench", "Time the solvers on seeded instances");
  bench->add_option("--n-list", bench_n, "instance sizes")
      ->required()
      ->delimiter(',');
  bench->add_option("--reps", bench_reps, "realizations per size");
  bench->add_option("--algos", bench_algos, "subset of seqbap,naive,lexbap")
      ->delimiter(',');
  bench->add_option("--seed", bench_seed, "base seed (realization r uses seed+r)");
  bench->add_option("--out", bench_out, "CSV output path (default: stdout)");
  bench->add_option("--svg", bench_svg, "optional log-log chart output path");

  // simulate
  int sim_n = 0;
  std::uint64_t sim_seed = 0;
  double sim_radius = std::numeric_limits<double>::infinity();
  std::string sim_topology, sim_trace, sim_trace_complete;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run the message-passing solver");
  simulate->add_option("--n", sim_n, "number of agents and tasks")->required();
  simulate->add_option("--seed", sim_seed, "RNG seed")->required();
  simulate->add_option("--radius", sim_radius,
                       "communication radius (default: complete topology)");
  simulate->add_option("--topology", sim_topology,
                       "topology CSV path (overrides --radius)");
  simulate->add_option("--trace", sim_trace, "per-round trace CSV (sparse run)");
  simulate->add_option("--trace-complete", sim_trace_complete,
                       "per-round trace CSV (complete-topology run)");

  // verify
  std::uint64_t verify_seed_base = 1;
  int verify_seeds = 50, verify_n_max = 6;
  CLI::App* verify = app.add_subcommand("verify", "Run the self-check suite");
  verify->add_option("--seeds", verify_seeds, "number of seeded instances");
  verify->add_option("--n-max", verify_n_max, "largest instance size (<= 7)");
  verify->add_option("--seed-base", verify_seed_base, "first seed");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) {
      bap::CaseStudyInstance inst = bap::generate_instance(gen_n, gen_seed);
      if (gen_out.empty()) {
        bap::save_instance(inst.graph, std::cout);
      } else {
        bap::save_instance_file(inst.graph, gen_out);
      }
      return kExitOk;
    }
    if (solve->parsed()) return cmd_solve(solve_in, solve_algo, solve_json);
    if (bench->parsed())
      return cmd_bench(bench_n, bench_reps, bench_algos, bench_seed, bench_out,
                       bench_svg);
    if (simulate->parsed())
      return cmd_simulate(sim_n, sim_seed, sim_radius, sim_topology, sim_trace,
                          sim_trace_complete);
    if (verify->parsed())
      return cmd_verify(verify_seed_base, verify_seeds, verify_n_max);
    return kExitBadInput;  // unreachable: a subcommand is required
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  } catch (const bap::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const bap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
