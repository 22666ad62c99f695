#pragma once

#include <istream>
#include <string>

#include <json.hpp>

#include "mmcp/graph.hpp"
#include "mmcp/pipeline.hpp"

namespace mmcp {

// Edge-list text format:
//   - lines starting with '#' and blank lines are ignored;
//   - the first data line is "n m";
//   - then exactly m lines "u v [w]" with 0-based endpoints; a missing weight
//     means 1.0.
// Self loops and duplicate edges are dropped with a warning on stderr.
// Throws ParseError (with a line number) on malformed input and the usual
// graph-construction errors on semantic problems.
Graph parse_edge_list(std::istream& in, const std::string& name);
Graph load_edge_list(const std::string& path);

// Inverse of the loader (weights at full double precision).
std::string format_edge_list(const Graph& g);

// One canonical solution record. Keys in insertion order; the assignment is a
// '0'/'1' string and cut_edges lists crossing edges ascending by edge index.
nlohmann::ordered_json solution_record(const std::string& graph_id, const Graph& g,
                                       const Solution& s, const std::string& solver,
                                       std::uint64_t seed, double seconds);

nlohmann::ordered_json bench_report_json(const BenchReport& report);

// Appends one compact JSON line to the file (creates it if needed).
void append_jsonl(const std::string& path, const nlohmann::ordered_json& j);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace mmcp
