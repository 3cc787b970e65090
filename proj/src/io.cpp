#include "bap/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace bap {

namespace {

int parse_vertex(const std::string& token, char prefix, const char* what) {
  if (token.size() < 2 || token[0] != prefix)
    throw InvalidInput(std::string("expected ") + prefix + "<int> for " + what +
                       ", got '" + token + "'");
  int value = 0;
  const char* begin = token.data() + 1;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw InvalidInput(std::string("bad ") + what + " id '" + token + "'");
  return value;
}

double parse_weight(const std::string& token) {
  if (token.empty()) throw InvalidInput("empty weight field");
  errno = 0;
  char* end = nullptr;
  double w = std::strtod(token.c_str(), &end);
  if (errno != 0 || end != token.c_str() + token.size())
    throw InvalidInput("bad weight '" + token + "'");
  return w;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

std::string format_weight(double w) {
  // Shortest decimal form that parses back to the same double; ties between
  // fixed and scientific notation resolve to fixed ("100", not "1e+02").
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, ptr);
}

WeightedBipartiteGraph load_instance(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty instance file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "agent,task,weight")
    throw InvalidInput("instance header must be 'agent,task,weight'");
  std::vector<WeightedEdge> edges;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 3)
      throw InvalidInput("line " + std::to_string(lineno) +
                         ": expected 3 fields, got " + std::to_string(fields.size()));
    WeightedEdge we;
    we.edge.agent = parse_vertex(fields[0], 'A', "agent");
    we.edge.task = parse_vertex(fields[1], 'T', "task");
    we.weight = parse_weight(fields[2]);
    edges.push_back(we);
  }
  return WeightedBipartiteGraph::from_edges(std::move(edges));
}

WeightedBipartiteGraph load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open instance file '" + path + "'");
  return load_instance(in);
}

void save_instance(const WeightedBipartiteGraph& g, std::ostream& out) {
  out << "agent,task,weight\n";
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    out << 'A' << e.agent << ",T" << e.task << ',' << format_weight(g.weights()[i])
        << '\n';
  }
}

void save_instance_file(const WeightedBipartiteGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open output file '" + path + "'");
  save_instance(g, out);
}

}  // namespace bap
