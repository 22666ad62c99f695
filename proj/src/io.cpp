#include "mmcp/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace mmcp {

namespace {

bool is_skippable(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;  // blank
}

[[noreturn]] void fail(const std::string& name, int line_no, const std::string& what) {
  throw ParseError(name + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph parse_edge_list(std::istream& in, const std::string& name) {
  std::string line;
  int line_no = 0;
  int n = -1;
  long long m = -1;

  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++line_no;
      if (is_skippable(line)) continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string data;
  if (!next_data_line(data)) throw ParseError(name + ": empty input, expected an 'n m' header");
  {
    std::istringstream hs(data);
    std::string extra;
    if (!(hs >> n >> m)) fail(name, line_no, "malformed header, expected 'n m'");
    if (hs >> extra) fail(name, line_no, "trailing tokens after 'n m' header");
    if (n < 1) fail(name, line_no, "vertex count must be positive");
    if (m < 0) fail(name, line_no, "edge count must be nonnegative");
  }

  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  for (long long k = 0; k < m; ++k) {
    if (!next_data_line(data))
      throw ParseError(name + ": expected " + std::to_string(m) + " edge lines, got " +
                       std::to_string(k));
    std::istringstream es(data);
    Edge e;
    std::string extra;
    if (!(es >> e.u >> e.v)) fail(name, line_no, "malformed edge line, expected 'u v [w]'");
    if (!(es >> e.w)) {
      e.w = 1.0;
    } else if (es >> extra) {
      fail(name, line_no, "trailing tokens after edge line");
    }
    if (e.u == e.v) {
      std::cerr << name << ":" << line_no << ": warning: self loop (" << e.u << ", " << e.v
                << ") dropped\n";
      continue;
    }
    const auto key = std::minmax(e.u, e.v);
    if (e.u >= 0 && e.v >= 0 && !seen.insert(key).second) {
      std::cerr << name << ":" << line_no << ": warning: duplicate edge (" << e.u << ", " << e.v
                << ") dropped\n";
      continue;
    }
    edges.push_back(e);
  }
  if (next_data_line(data)) fail(name, line_no, "unexpected data after the declared edge list");

  return build_graph(n, edges);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse_edge_list(in, path);
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out.precision(std::numeric_limits<double>::max_digits10);
  out << g.n << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  return out.str();
}

nlohmann::ordered_json solution_record(const std::string& graph_id, const Graph& g,
                                       const Solution& s, const std::string& solver,
                                       std::uint64_t seed, double seconds) {
  std::string assignment(s.assignment.size(), '0');
  for (std::size_t i = 0; i < s.assignment.size(); ++i)
    if (s.assignment[i]) assignment[i] = '1';

  nlohmann::ordered_json cut = nlohmann::ordered_json::array();
  for (const Edge& e : crossing_edges(g, s.assignment))
    cut.push_back(nlohmann::ordered_json::array({e.u, e.v, e.w}));

  nlohmann::ordered_json j;
  j["graph_id"] = graph_id;
  j["n"] = g.n;
  j["m"] = g.m();
  j["cut_value"] = s.cut_value;
  j["feasible"] = s.feasible;
  j["assignment"] = assignment;
  j["cut_edges"] = std::move(cut);
  j["solver"] = solver;
  j["seed"] = seed;
  j["seconds"] = seconds;
  return j;
}

nlohmann::ordered_json bench_report_json(const BenchReport& report) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const BenchRecord& r : report.records) {
    nlohmann::ordered_json rec;
    rec["graph_id"] = r.graph_id;
    rec["rep"] = r.rep;
    rec["seed"] = r.seed;
    rec["cut_value"] = r.cut_value;
    rec["feasible"] = r.feasible;
    rec["seconds"] = r.seconds;
    if (!r.error.empty()) rec["error"] = r.error;
    records.push_back(std::move(rec));
  }
  nlohmann::ordered_json j;
  j["solver"] = report.solver;
  j["reps"] = report.reps;
  j["mean_cut"] = report.mean_cut;
  j["stddev_cut"] = report.stddev_cut;
  j["mean_seconds"] = report.mean_seconds;
  j["violation_rate"] = report.violation_rate;
  j["records"] = std::move(records);
  return j;
}

void append_jsonl(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot open '" + path + "' for appending");
  out << j.dump() << '\n';
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
}

}  // namespace mmcp
