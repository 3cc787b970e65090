#pragma once

#include <iosfwd>
#include <string>

#include "bap/graph.hpp"

namespace bap {

// Instance file format: UTF-8 text, header line "agent,task,weight", then one
// line per edge "A<int>,T<int>,<decimal>". Weights are written round-trip
// exact (max_digits10), so saving the same graph twice is byte-identical.
WeightedBipartiteGraph load_instance(std::istream& in);
WeightedBipartiteGraph load_instance_file(const std::string& path);
void save_instance(const WeightedBipartiteGraph& g, std::ostream& out);
void save_instance_file(const WeightedBipartiteGraph& g, const std::string& path);

// Round-trip exact decimal rendering of a weight (shortest form, fixed
// notation preferred on ties); shared by the CSV writer and the CLI.
std::string format_weight(double w);

}  // namespace bap
