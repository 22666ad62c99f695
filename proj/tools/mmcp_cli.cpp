// Command-line front end: one subcommand per solver plus instance generation,
// decomposition inspection, and benchmarking over a directory of instances.
//
// Exit codes: 0 success (feasible cut found / command completed),
//             1 solver failure (infeasible result or an unrecoverable stage),
//             2 bad input (malformed file, bad arguments, unusable graph).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mmcp/decompose.hpp"
#include "mmcp/io.hpp"
#include "mmcp/pipeline.hpp"
#include "mmcp/rng.hpp"

namespace {

struct CommonOpts {
  std::string graph_path;
  std::string graph_id;  // defaults to the file stem
  std::uint64_t seed = 0;
  std::string alpha = "ratio";
  double epsilon = 1e-4;
  int small_threshold = 16;
  int iters = 0;     // 0 keeps each stage's default
  int restarts = 0;  // 0 keeps the default
  std::string out;   // JSONL append target
  int threads = 0;   // 0 keeps the OpenMP default
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("graph", o.graph_path, "edge-list file ('n m' header, then 'u v [w]' lines)")
      ->required();
  cmd->add_option("--id", o.graph_id, "instance name used in the output record");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--alpha", o.alpha, "cost scaling: ratio (m/n) or unit")
      ->check(CLI::IsMember({"ratio", "unit"}));
  cmd->add_option("--epsilon", o.epsilon, "connectivity penalty floor");
  cmd->add_option("--small-threshold", o.small_threshold,
                  "components up to this size are solved exactly");
  cmd->add_option("--iters", o.iters,
                  "iteration budget (relaxation steps / tree samples / generations)");
  cmd->add_option("--restarts", o.restarts, "relaxation restarts");
  cmd->add_option("--out", o.out, "append the result record to this JSONL file");
  cmd->add_option("--threads", o.threads, "worker thread cap (0 = library default)");
}

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

mmcp::PipelineConfig make_config(const CommonOpts& o) {
  mmcp::PipelineConfig cfg;
  cfg.seed = o.seed;
  cfg.small_threshold = o.small_threshold;
  cfg.relax.alpha_mode = o.alpha == "unit" ? mmcp::AlphaMode::Unit : mmcp::AlphaMode::Ratio;
  cfg.relax.epsilon = o.epsilon;
  if (o.iters > 0) {
    cfg.relax.max_iters = o.iters;
    cfg.rts_iters = o.iters;
    cfg.genetic.max_iter = o.iters;
  }
  if (o.restarts > 0) cfg.relax.restarts = o.restarts;
  return cfg;
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

int run_one(const CommonOpts& o, mmcp::SolverKind kind) {
  apply_threads(o.threads);
  const mmcp::Graph g = mmcp::load_edge_list(o.graph_path);
  const mmcp::PipelineConfig cfg = make_config(o);

  const auto t0 = std::chrono::steady_clock::now();
  const mmcp::Solution s = mmcp::run_solver(g, kind, cfg, o.seed);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string id = o.graph_id.empty() ? stem_of(o.graph_path) : o.graph_id;
  const auto record = mmcp::solution_record(id, g, s, mmcp::solver_name(kind), o.seed, seconds);
  std::cout << record.dump(2) << '\n';
  if (!o.out.empty()) mmcp::append_jsonl(o.out, record);
  return s.feasible ? 0 : 1;
}

int run_decompose(const CommonOpts& o) {
  const mmcp::Graph g = mmcp::load_edge_list(o.graph_path);
  const mmcp::Decomposition d = mmcp::decompose(g);

  nlohmann::ordered_json bridges = nlohmann::ordered_json::array();
  for (int id : d.bridge_ids) {
    const mmcp::Edge& e = g.edges[static_cast<std::size_t>(id)];
    bridges.push_back(nlohmann::ordered_json::array({e.u, e.v, e.w}));
  }
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (const mmcp::ComponentPart& part : d.components) {
    nlohmann::ordered_json c;
    c["n"] = part.subgraph.n;
    c["m"] = part.subgraph.m();
    c["vertices"] = part.vertex_map;
    comps.push_back(std::move(c));
  }
  nlohmann::ordered_json j;
  j["graph_id"] = o.graph_id.empty() ? stem_of(o.graph_path) : o.graph_id;
  j["n"] = g.n;
  j["m"] = g.m();
  j["bridges"] = std::move(bridges);
  j["components"] = std::move(comps);
  j["singletons"] = d.singleton_count;
  std::cout << j.dump(2) << '\n';
  if (!o.out.empty()) mmcp::append_jsonl(o.out, j);
  return 0;
}

struct GenOpts {
  int n = 20;
  int m = 40;
  int count = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
};

int run_gen(const GenOpts& o) {
  std::filesystem::create_directories(o.out_dir);
  for (int i = 0; i < o.count; ++i) {
    const mmcp::Graph g =
        mmcp::generate_synthetic(o.n, o.m, mmcp::derive_seed(o.seed, static_cast<std::uint64_t>(i)));
    const std::string name =
        "g" + std::to_string(i) + "_n" + std::to_string(o.n) + "_m" + std::to_string(o.m) + ".txt";
    const std::string path = (std::filesystem::path(o.out_dir) / name).string();
    mmcp::write_text_file(path, mmcp::format_edge_list(g));
    std::cout << path << '\n';
  }
  return 0;
}

struct BenchOpts {
  std::string dir;
  std::string solver = "pioneer";
  int reps = 5;
  std::uint64_t seed = 0;
  std::string out;
  CommonOpts common;  // alpha / epsilon / iters / threads reuse
};

int run_bench(const BenchOpts& o) {
  apply_threads(o.common.threads);
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(o.dir))
    if (entry.is_regular_file()) files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw mmcp::IoError("no instance files in '" + o.dir + "'");

  std::vector<std::pair<std::string, mmcp::Graph>> inputs;
  inputs.reserve(files.size());
  for (const std::string& f : files) inputs.emplace_back(stem_of(f), mmcp::load_edge_list(f));

  const mmcp::SolverKind kind = mmcp::solver_from_name(o.solver);
  const mmcp::PipelineConfig cfg = make_config(o.common);
  const mmcp::BenchReport report = mmcp::bench(inputs, kind, cfg, o.reps, o.seed);
  const auto j = mmcp::bench_report_json(report);
  std::cout << j.dump(2) << '\n';
  if (!o.out.empty()) mmcp::write_text_file(o.out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximum minimal cut solver"};
  app.require_subcommand(1);

  CommonOpts solve_o, brute_o, rts_o, ga_o, relax_o, heur_o, dec_o;
  add_common_options(app.add_subcommand("solve", "full pipeline (decompose, relax, round, improve)"),
                     solve_o);
  add_common_options(app.add_subcommand("brute", "exact exhaustive search (small graphs)"), brute_o);
  add_common_options(app.add_subcommand("random-tree", "randomized spanning-tree baseline"), rts_o);
  add_common_options(app.add_subcommand("ga", "genetic baseline"), ga_o);
  add_common_options(app.add_subcommand("relax", "relaxation + rounding only (no fallback)"), relax_o);
  add_common_options(app.add_subcommand("heuristic", "tree improvement from a random tree"), heur_o);
  add_common_options(app.add_subcommand("decompose", "print the bridge decomposition"), dec_o);

  GenOpts gen_o;
  CLI::App* gen = app.add_subcommand("gen", "generate connected bridgeless instances");
  gen->add_option("--n", gen_o.n, "vertex count")->required();
  gen->add_option("--m", gen_o.m, "edge count")->required();
  gen->add_option("--count", gen_o.count, "number of instances");
  gen->add_option("--seed", gen_o.seed, "random seed");
  gen->add_option("--out", gen_o.out_dir, "output directory")->required();

  BenchOpts bench_o;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run one solver over a directory of instances");
  bench_cmd->add_option("dir", bench_o.dir, "directory of edge-list files")->required();
  bench_cmd->add_option("--solver", bench_o.solver,
                        "pioneer | brute | random-tree | ga | relax | heuristic");
  bench_cmd->add_option("--reps", bench_o.reps, "repetitions per instance");
  bench_cmd->add_option("--seed", bench_o.seed, "base seed (rep r derives its own)");
  bench_cmd->add_option("--out", bench_o.out, "write the report JSON here");
  bench_cmd->add_option("--alpha", bench_o.common.alpha, "cost scaling: ratio or unit")
      ->check(CLI::IsMember({"ratio", "unit"}));
  bench_cmd->add_option("--epsilon", bench_o.common.epsilon, "connectivity penalty floor");
  bench_cmd->add_option("--iters", bench_o.common.iters, "iteration budget override");
  bench_cmd->add_option("--small-threshold", bench_o.common.small_threshold,
                        "exact-solve size threshold");
  bench_cmd->add_option("--threads", bench_o.common.threads, "worker thread cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("solve")) return run_one(solve_o, mmcp::SolverKind::Pioneer);
    if (app.got_subcommand("brute")) return run_one(brute_o, mmcp::SolverKind::Brute);
    if (app.got_subcommand("random-tree")) return run_one(rts_o, mmcp::SolverKind::RandomTree);
    if (app.got_subcommand("ga")) return run_one(ga_o, mmcp::SolverKind::Genetic);
    if (app.got_subcommand("relax")) return run_one(relax_o, mmcp::SolverKind::RelaxOnly);
    if (app.got_subcommand("heuristic")) return run_one(heur_o, mmcp::SolverKind::HeuristicOnly);
    if (app.got_subcommand("decompose")) return run_decompose(dec_o);
    if (app.got_subcommand("gen")) return run_gen(gen_o);
    if (app.got_subcommand("bench")) return run_bench(bench_o);
  } catch (const mmcp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mmcp::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mmcp::EmptyGraph& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mmcp::DisconnectedInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mmcp::NonpositiveWeight& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mmcp::VertexOutOfRange& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mmcp::InfeasibleShape& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mmcp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;  // unreachable: require_subcommand guarantees one branch ran
}
