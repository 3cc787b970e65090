// Python bindings for the bottleneck assignment toolbox.
//
// The module mirrors the C++ API: graphs and matchings are value types,
// solver results are plain records, and every library error surfaces as an
// exception rooted at bapsolve.Error. Solution sets are returned as sorted
// lists so equal matchings compare equal on the Python side too.

#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bap/baselines.hpp"
#include "bap/bench.hpp"
#include "bap/bottleneck.hpp"
#include "bap/distributed.hpp"
#include "bap/errors.hpp"
#include "bap/graph.hpp"
#include "bap/instance_gen.hpp"
#include "bap/io.hpp"
#include "bap/matching_ops.hpp"
#include "bap/seqbap.hpp"

namespace py = pybind11;

namespace {

std::vector<bap::WeightedEdge> to_weighted_edges(
    const std::vector<std::tuple<int, int, double>>& triples) {
  std::vector<bap::WeightedEdge> edges;
  edges.reserve(triples.size());
  for (const auto& [agent, task, weight] : triples)
    edges.push_back({{agent, task}, weight});
  return edges;
}

std::vector<bap::Edge> to_edges(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<bap::Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [agent, task] : pairs) edges.push_back({agent, task});
  return edges;
}

template <typename T>
std::vector<T> set_to_list(const std::set<T>& s) {
  return std::vector<T>(s.begin(), s.end());
}

std::string edge_repr(const bap::Edge& e) {
  return "Edge(agent=" + std::to_string(e.agent) +
         ", task=" + std::to_string(e.task) + ")";
}

}  // namespace

PYBIND11_MODULE(bapsolve, m) {
  m.doc() =
      "Bottleneck assignment solvers: min-max matching, sequential batch "
      "selection, exact lexicographic baselines and a synchronous "
      "message-passing simulator.";

  // Base first so the translators for derived types take precedence.
  auto& exc_error = py::register_exception<bap::Error>(m, "Error");
  py::register_exception<bap::SolverError>(m, "SolverError", exc_error.ptr());
  py::register_exception<bap::DisconnectedTopology>(m, "DisconnectedTopology",
                                                    exc_error.ptr());
  auto& exc_invalid =
      py::register_exception<bap::InvalidInput>(m, "InvalidInput", exc_error.ptr());
  py::register_exception<bap::EnumerationCapExceeded>(m, "EnumerationCapExceeded",
                                                      exc_invalid.ptr());

  py::class_<bap::Edge>(m, "Edge", "Agent-task pair identifying one edge.")
      .def(py::init<int, int>(), py::arg("agent"), py::arg("task"))
      .def_readonly("agent", &bap::Edge::agent)
      .def_readonly("task", &bap::Edge::task)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(py::self < py::self)
      .def("__hash__",
           [](const bap::Edge& e) {
             return py::hash(py::make_tuple(e.agent, e.task));
           })
      .def("__repr__", &edge_repr);

  py::class_<bap::WeightedBipartiteGraph>(m, "Graph",
                                          "Immutable weighted bipartite graph.")
      .def(py::init([](const std::vector<int>& agents, const std::vector<int>& tasks,
                       const std::vector<std::tuple<int, int, double>>& edges) {
             return bap::WeightedBipartiteGraph(agents, tasks,
                                                to_weighted_edges(edges));
           }),
           py::arg("agents"), py::arg("tasks"), py::arg("edges"),
           "Build from explicit vertex sets and (agent, task, weight) triples.")
      .def_static(
          "from_edges",
          [](const std::vector<std::tuple<int, int, double>>& edges) {
            return bap::WeightedBipartiteGraph::from_edges(to_weighted_edges(edges));
          },
          py::arg("edges"),
          "Build from (agent, task, weight) triples; vertex sets are implied.")
      .def_property_readonly("agents", &bap::WeightedBipartiteGraph::agents)
      .def_property_readonly("tasks", &bap::WeightedBipartiteGraph::tasks)
      .def("edges", &bap::WeightedBipartiteGraph::edges)
      .def("edge_count", &bap::WeightedBipartiteGraph::edge_count)
      .def("has_edge", &bap::WeightedBipartiteGraph::has_edge, py::arg("edge"))
      .def("weight", &bap::WeightedBipartiteGraph::weight, py::arg("edge"))
      .def(
          "weight",
          [](const bap::WeightedBipartiteGraph& g, int agent, int task) {
            return g.weight({agent, task});
          },
          py::arg("agent"), py::arg("task"))
      .def("edges_of_agent", &bap::WeightedBipartiteGraph::edges_of_agent,
           py::arg("agent"))
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__repr__", [](const bap::WeightedBipartiteGraph& g) {
        return "Graph(" + std::to_string(g.agents().size()) + " agents, " +
               std::to_string(g.tasks().size()) + " tasks, " +
               std::to_string(g.edge_count()) + " edges)";
      });

  py::class_<bap::Matching>(m, "Matching",
                            "Edge set in which no vertex appears twice.")
      .def(py::init<>())
      .def(py::init<std::vector<bap::Edge>>(), py::arg("edges"))
      .def(py::init([](const std::vector<std::pair<int, int>>& pairs) {
             return bap::Matching(to_edges(pairs));
           }),
           py::arg("pairs"))
      .def("edges", &bap::Matching::edges)
      .def("task_of", &bap::Matching::task_of, py::arg("agent"))
      .def("agent_of", &bap::Matching::agent_of, py::arg("task"))
      .def("without", &bap::Matching::without, py::arg("edge"))
      .def("__contains__", &bap::Matching::contains)
      .def("__len__", &bap::Matching::size)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(py::self < py::self)
      .def("__repr__", [](const bap::Matching& m_) {
        std::string out = "Matching([";
        for (std::size_t i = 0; i < m_.edges().size(); ++i) {
          if (i) out += ", ";
          out += edge_repr(m_.edges()[i]);
        }
        return out + "])";
      });

  py::class_<bap::WeightTuple>(m, "WeightTuple",
                               "Matching weights in descending order, compared "
                               "lexicographically.")
      .def(py::init<std::vector<double>>(), py::arg("weights"))
      .def_static("of", &bap::WeightTuple::of, py::arg("graph"), py::arg("matching"))
      .def("values", &bap::WeightTuple::values)
      .def("__len__", &bap::WeightTuple::size)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(py::self < py::self)
      .def(py::self <= py::self)
      .def(py::self > py::self)
      .def(py::self >= py::self)
      .def("__repr__", [](const bap::WeightTuple& t) {
        std::string out = "WeightTuple([";
        for (std::size_t i = 0; i < t.values().size(); ++i) {
          if (i) out += ", ";
          out += bap::format_weight(t.values()[i]);
        }
        return out + "])";
      });

  py::class_<bap::BottleneckCertificate>(
      m, "BottleneckCertificate",
      "Min-max matching with its bottleneck weight and a critical edge.")
      .def_readonly("matching", &bap::BottleneckCertificate::matching)
      .def_readonly("bottleneck_weight",
                    &bap::BottleneckCertificate::bottleneck_weight)
      .def_readonly("bottleneck_edge", &bap::BottleneckCertificate::bottleneck_edge);

  py::class_<bap::PriceOfAbsence>(m, "PriceOfAbsence",
                                  "Bottleneck increase caused by deleting an edge.")
      .def_readonly("value", &bap::PriceOfAbsence::value)
      .def("is_infinite", &bap::PriceOfAbsence::is_infinite)
      .def(py::self == py::self)
      .def("__repr__", [](const bap::PriceOfAbsence& p) {
        return "PriceOfAbsence(" + bap::format_weight(p.value) + ")";
      });

  py::class_<bap::SelectionBatch>(
      m, "SelectionBatch", "One locking step of the sequential solver.")
      .def_readonly("critical_edge", &bap::SelectionBatch::critical_edge)
      .def_readonly("locked_edges", &bap::SelectionBatch::locked_edges)
      .def_readonly("bottleneck_weight", &bap::SelectionBatch::bottleneck_weight)
      .def(py::self == py::self);

  py::class_<bap::SeqBapResult>(m, "SeqBapResult",
                                "Sequential solver output; exact=True certifies "
                                "unique lexicographic optimality.")
      .def_readonly("matching", &bap::SeqBapResult::matching)
      .def_readonly("exact", &bap::SeqBapResult::exact)
      .def_readonly("selections", &bap::SeqBapResult::selections)
      .def(py::self == py::self);

  py::class_<bap::SolutionSetReport>(
      m, "SolutionSetReport", "Exhaustive reference solution sets.")
      .def_property_readonly(
          "bap_solutions",
          [](const bap::SolutionSetReport& r) { return set_to_list(r.bap_solutions); })
      .def_property_readonly("lexbap_solutions",
                             [](const bap::SolutionSetReport& r) {
                               return set_to_list(r.lexbap_solutions);
                             })
      .def_readonly("lex_min_tuple", &bap::SolutionSetReport::lex_min_tuple);

  // Core solvers and diagnostics.
  m.def("maximum_cardinality_matching", &bap::maximum_cardinality_matching,
        py::arg("graph"), "Deterministic maximum-cardinality matching.");
  m.def("solve_bap", &bap::solve_bap, py::arg("graph"),
        "Minimize the maximum edge weight over maximum-cardinality matchings.");
  m.def("solve_seqbap",
        py::overload_cast<const bap::WeightedBipartiteGraph&>(&bap::solve_seqbap),
        py::arg("graph"), "Sequential bottleneck solver.");
  m.def("solve_seqbap",
        py::overload_cast<const bap::WeightedBipartiteGraph&, const bap::Matching&>(
            &bap::solve_seqbap),
        py::arg("graph"), py::arg("initial"),
        "Sequential bottleneck solver from a chosen initial matching.");
  m.def(
      "enumerate_seqbap_solutions",
      [](const bap::WeightedBipartiteGraph& g, int cap) {
        return set_to_list(bap::enumerate_seqbap_solutions(g, cap));
      },
      py::arg("graph"), py::arg("cap") = 6,
      "All matchings the sequential selection rule can produce (small "
      "instances only).");
  m.def("is_critical_bottleneck_edge", &bap::is_critical_bottleneck_edge,
        py::arg("graph"), py::arg("matching"), py::arg("edge"),
        "Whether a heaviest matched edge certifies bottleneck optimality.");
  m.def("has_positive_price", &bap::has_positive_price, py::arg("graph"),
        py::arg("matching"), py::arg("edge"),
        "Whether deleting the edge worsens the bottleneck value (one "
        "augmenting-path search).");
  m.def("price_of_absence", &bap::price_of_absence, py::arg("graph"),
        py::arg("edge"),
        "Bottleneck increase caused by deleting the edge (re-solves).");

  // Exhaustive and baseline solvers.
  m.def("brute_force_enumerate", &bap::brute_force_enumerate, py::arg("graph"),
        py::arg("cap") = 7,
        "Reference solution sets over all task-perfect matchings.");
  m.def("solve_lexbap_exact", &bap::solve_lexbap_exact, py::arg("graph"),
        "Exact lexicographic bottleneck solver via rank-encoded assignment.");
  m.def("solve_naive_greedy", &bap::solve_naive_greedy, py::arg("graph"),
        "Sequential baseline that re-solves from scratch at every step.");

  // Instance generation and files.
  py::class_<bap::Point2>(m, "Point2")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readonly("x", &bap::Point2::x)
      .def_readonly("y", &bap::Point2::y)
      .def("__repr__", [](const bap::Point2& p) {
        return "Point2(" + bap::format_weight(p.x) + ", " +
               bap::format_weight(p.y) + ")";
      });

  py::class_<bap::CaseStudyInstance>(
      m, "CaseStudyInstance",
      "Seeded planar scenario: positions plus the induced distance graph.")
      .def_readonly("n", &bap::CaseStudyInstance::n)
      .def_readonly("seed", &bap::CaseStudyInstance::seed)
      .def_readonly("agent_positions", &bap::CaseStudyInstance::agent_positions)
      .def_readonly("goal_positions", &bap::CaseStudyInstance::goal_positions)
      .def_readonly("graph", &bap::CaseStudyInstance::graph);

  m.def("generate_instance", &bap::generate_instance, py::arg("n"), py::arg("seed"),
        "Random planar instance: uniform positions, Euclidean weights.");
  m.def("load_instance_file", &bap::load_instance_file, py::arg("path"));
  m.def("save_instance_file", &bap::save_instance_file, py::arg("graph"),
        py::arg("path"));
  m.def(
      "instance_from_csv",
      [](const std::string& text) {
        std::istringstream in(text);
        return bap::load_instance(in);
      },
      py::arg("text"), "Parse an instance from CSV text.");
  m.def(
      "instance_to_csv",
      [](const bap::WeightedBipartiteGraph& g) {
        std::ostringstream out;
        bap::save_instance(g, out);
        return out.str();
      },
      py::arg("graph"), "Serialize an instance to CSV text.");
  m.def("format_weight", &bap::format_weight, py::arg("weight"),
        "Round-trip exact decimal rendering of a weight.");

  // Message-passing simulation.
  py::class_<bap::CommGraph>(m, "CommGraph",
                             "Undirected communication topology over agents.")
      .def(py::init<std::vector<int>, std::vector<std::pair<int, int>>>(),
           py::arg("nodes"), py::arg("links"))
      .def_static("complete", &bap::CommGraph::complete, py::arg("nodes"))
      .def_property_readonly("nodes", &bap::CommGraph::nodes)
      .def_property_readonly("links", &bap::CommGraph::links)
      .def("neighbours", &bap::CommGraph::neighbours, py::arg("node"))
      .def("are_neighbours", &bap::CommGraph::are_neighbours, py::arg("a"),
           py::arg("b"))
      .def_property_readonly("diameter", &bap::CommGraph::diameter);

  m.def("build_comm_graph_radius", &bap::build_comm_graph_radius,
        py::arg("agents"), py::arg("positions"), py::arg("radius"),
        "Link agents whose positions are within the given radius.");
  m.def("load_topology_file", &bap::load_topology_file, py::arg("path"));

  py::class_<bap::RoundRecord>(m, "RoundRecord")
      .def_readonly("round", &bap::RoundRecord::round)
      .def_readonly("primitive", &bap::RoundRecord::primitive)
      .def_readonly("steps", &bap::RoundRecord::steps)
      .def_readonly("messages", &bap::RoundRecord::messages);

  py::class_<bap::SimTrace>(m, "SimTrace")
      .def_readonly("clock_steps", &bap::SimTrace::clock_steps)
      .def_readonly("messages_sent", &bap::SimTrace::messages_sent)
      .def_readonly("rounds", &bap::SimTrace::rounds)
      .def("to_csv", [](const bap::SimTrace& t) {
        std::ostringstream out;
        t.write_csv(out);
        return out.str();
      });

  py::class_<bap::SimOptions>(m, "SimOptions")
      .def(py::init<>())
      .def_readwrite("early_termination", &bap::SimOptions::early_termination);

  py::class_<bap::DistributedResult>(m, "DistributedResult")
      .def_readonly("result", &bap::DistributedResult::result)
      .def_readonly("trace", &bap::DistributedResult::trace);

  m.def("run_distributed_seqbap", &bap::run_distributed_seqbap, py::arg("graph"),
        py::arg("comm"), py::arg("initial"), py::arg("options") = bap::SimOptions{},
        "Synchronous message-passing run; result matches the centralized "
        "solver.");

  py::class_<bap::SimulationCampaignResult>(m, "SimulationCampaignResult")
      .def_readonly("centralized", &bap::SimulationCampaignResult::centralized)
      .def_readonly("trace_complete",
                    &bap::SimulationCampaignResult::trace_complete)
      .def_readonly("trace_radius", &bap::SimulationCampaignResult::trace_radius)
      .def_readonly("radius_diameter",
                    &bap::SimulationCampaignResult::radius_diameter)
      .def_readonly("matchings_equal",
                    &bap::SimulationCampaignResult::matchings_equal);

  m.def("run_simulation_campaign", &bap::run_simulation_campaign, py::arg("n"),
        py::arg("seed"), py::arg("radius"),
        "Generate, solve centrally, then simulate on complete and radius "
        "topologies.");

  // Benchmarking.
  py::class_<bap::BenchRecord>(m, "BenchRecord")
      .def_readonly("n", &bap::BenchRecord::n)
      .def_readonly("algorithm", &bap::BenchRecord::algorithm)
      .def_readonly("realization", &bap::BenchRecord::realization)
      .def_readonly("seconds", &bap::BenchRecord::seconds)
      .def_readonly("exact", &bap::BenchRecord::exact)
      .def_readonly("clock_steps", &bap::BenchRecord::clock_steps);

  m.def("run_benchmark", &bap::run_benchmark, py::arg("n_values"),
        py::arg("realizations"), py::arg("algorithms"), py::arg("base_seed"),
        "Time the solvers on identical seeded instances.");
  m.def("bench_medians", &bap::bench_medians, py::arg("records"),
        "Median seconds per (n, algorithm).");
  m.def("fitted_loglog_slope", &bap::fitted_loglog_slope, py::arg("records"),
        py::arg("algorithm"),
        "Least-squares slope of log median seconds against log n.");

  // Self-verification.
  py::class_<bap::VerifyReport>(m, "VerifyReport")
      .def_readonly("checks_run", &bap::VerifyReport::checks_run)
      .def_readonly("failures", &bap::VerifyReport::failures)
      .def_readonly("first_failure", &bap::VerifyReport::first_failure)
      .def("ok", &bap::VerifyReport::ok);

  m.def(
      "verify",
      [](std::uint64_t base_seed, int seed_count, int n_max) {
        return bap::verify(base_seed, seed_count, n_max);
      },
      py::arg("base_seed") = 1, py::arg("seed_count") = 50, py::arg("n_max") = 6,
      "Replay the definitional cross-checks on seeded instances.");

  m.attr("__version__") = "1.0.0";
}
