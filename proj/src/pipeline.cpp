#include "mmcp/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "mmcp/decompose.hpp"
#include "mmcp/forest.hpp"
#include "mmcp/rng.hpp"

namespace mmcp {

namespace {

// Seed streams, so every stage of every component draws independent bits.
enum : std::uint64_t { kStreamRelax = 1, kStreamTree = 2, kStreamDegrade = 3 };

TreeCut seeded_random_tree_cut(const Graph& g, std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(g.m()));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  return best_cut_of_tree(g, kruskal_tree(g, order));
}

Solution solve_component(const Graph& h, const PipelineConfig& cfg, std::uint64_t comp_index) {
  if (h.n <= cfg.small_threshold) return brute_force(h, cfg.brute_cap);

  Solution relax_sol;
  bool relax_ok = false;
  if (!cfg.skip_relax) {
    RelaxConfig rc = cfg.relax;
    rc.seed = derive_seed(cfg.seed, kStreamRelax, comp_index);
    auto [sol, rep] = solve_relax(h, rc);
    relax_sol = std::move(sol);
    relax_ok = relax_sol.feasible;
    if (cfg.skip_heuristic && relax_ok) return relax_sol;
  }

  TreeCut start;
  if (relax_ok)
    start = best_cut_of_tree(h, tree_from_cut(h, relax_sol));
  else  // relaxation skipped, or rounded+repaired output still infeasible
    start = seeded_random_tree_cut(h, derive_seed(cfg.seed, kStreamTree, comp_index));

  if (cfg.skip_heuristic) return start.solution;
  return improve(h, start, cfg.heuristic);
}

}  // namespace

Solution pioneer(const Graph& g, const PipelineConfig& cfg) {
  if (g.n == 1) throw NoCandidates("single-vertex graph admits no cut");
  const Decomposition d = decompose(g);

  std::vector<ComponentSolution> comp_solutions;
  comp_solutions.reserve(d.components.size());
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    const Graph& h = d.components[c].subgraph;
    Solution sol;
    try {
      sol = solve_component(h, cfg, static_cast<std::uint64_t>(c));
    } catch (const Error&) {
      // Any stage failure degrades this component to the randomized baseline.
      sol = random_tree_search(h, cfg.rts_iters,
                               derive_seed(cfg.seed, kStreamDegrade, static_cast<std::uint64_t>(c)));
    }
    comp_solutions.emplace_back(std::move(sol), d.components[c].vertex_map);
  }
  return combine(g, d.bridges(g), comp_solutions);
}

Graph generate_synthetic(int n, int m, std::uint64_t seed) {
  if (n < 1) throw EmptyGraph("generator needs n >= 1");
  const long long max_m = static_cast<long long>(n) * (n - 1) / 2;
  if (m < n || m > max_m)
    throw InfeasibleShape("no connected bridgeless graph with n = " + std::to_string(n) +
                          ", m = " + std::to_string(m) +
                          " (need n <= m <= n(n-1)/2)");

  Rng rng(seed);
  std::vector<int> digit(static_cast<std::size_t>(n));
  for (auto& d : digit) d = static_cast<int>(rng.next_below(10));

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(max_m));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::pair<int, int>> chosen = pairs;
    rng.shuffle(chosen);
    chosen.resize(static_cast<std::size_t>(m));

    // Cheap connectivity screen before building.
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    int classes = n;
    for (const auto& [u, v] : chosen) {
      const int ru = find(u), rv = find(v);
      if (ru != rv) {
        parent[static_cast<std::size_t>(ru)] = rv;
        --classes;
      }
    }
    if (classes != 1) continue;

    std::vector<Edge> edges;
    edges.reserve(chosen.size());
    for (const auto& [u, v] : chosen) {
      const int du = digit[static_cast<std::size_t>(u)];
      const int dv = digit[static_cast<std::size_t>(v)];
      double w = static_cast<double>(du + dv + du * dv);
      if (w == 0.0) w = 1e-6;
      edges.push_back(Edge{u, v, w});
    }
    Graph g = build_graph(n, edges);
    if (find_bridges(g).empty()) return g;
  }
  throw InfeasibleShape("found no connected bridgeless graph with n = " + std::to_string(n) +
                        ", m = " + std::to_string(m) + " after 1000 attempts");
}

const char* solver_name(SolverKind k) {
  switch (k) {
    case SolverKind::Pioneer: return "pioneer";
    case SolverKind::Brute: return "brute";
    case SolverKind::RandomTree: return "random-tree";
    case SolverKind::Genetic: return "ga";
    case SolverKind::RelaxOnly: return "relax";
    case SolverKind::HeuristicOnly: return "heuristic";
  }
  return "unknown";
}

SolverKind solver_from_name(const std::string& name) {
  if (name == "pioneer") return SolverKind::Pioneer;
  if (name == "brute") return SolverKind::Brute;
  if (name == "random-tree") return SolverKind::RandomTree;
  if (name == "ga") return SolverKind::Genetic;
  if (name == "relax") return SolverKind::RelaxOnly;
  if (name == "heuristic") return SolverKind::HeuristicOnly;
  throw ParseError("unknown solver '" + name + "'");
}

namespace {

Solution run_relax_only(const Graph& g, const PipelineConfig& cfg, std::uint64_t seed) {
  if (g.n == 1) throw NoCandidates("single-vertex graph admits no cut");
  const Decomposition d = decompose(g);
  std::vector<ComponentSolution> comp_solutions;
  comp_solutions.reserve(d.components.size());
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    RelaxConfig rc = cfg.relax;
    rc.seed = derive_seed(seed, kStreamRelax, static_cast<std::uint64_t>(c));
    auto [sol, rep] = solve_relax(d.components[c].subgraph, rc);
    if (!sol.feasible) {
      // A single unrepaired component makes the whole instance a violation.
      Solution out;
      out.assignment.assign(static_cast<std::size_t>(g.n), 0);
      out.cut_value = 0.0;
      out.feasible = false;
      out.provenance = Provenance::Relaxation;
      return out;
    }
    comp_solutions.emplace_back(std::move(sol), d.components[c].vertex_map);
  }
  return combine(g, d.bridges(g), comp_solutions);
}

}  // namespace

Solution run_solver(const Graph& g, SolverKind solver, const PipelineConfig& cfg,
                    std::uint64_t seed) {
  PipelineConfig local = cfg;
  local.seed = seed;
  switch (solver) {
    case SolverKind::Pioneer:
      return pioneer(g, local);
    case SolverKind::Brute:
      return brute_force(g, cfg.brute_cap);
    case SolverKind::RandomTree:
      return random_tree_search(g, cfg.rts_iters, seed);
    case SolverKind::Genetic: {
      GeneticConfig gc = cfg.genetic;
      gc.seed = seed;
      return genetic(g, gc);
    }
    case SolverKind::RelaxOnly:
      return run_relax_only(g, cfg, seed);
    case SolverKind::HeuristicOnly: {
      local.skip_relax = true;
      local.skip_heuristic = false;
      return pioneer(g, local);
    }
  }
  throw Error("unhandled solver kind");
}

BenchReport bench(const std::vector<std::pair<std::string, Graph>>& inputs, SolverKind solver,
                  const PipelineConfig& cfg, int reps, std::uint64_t seed) {
  BenchReport report;
  report.solver = solver_name(solver);
  report.reps = reps;

  for (const auto& [id, g] : inputs) {
    for (int rep = 0; rep < reps; ++rep) {
      BenchRecord rec;
      rec.graph_id = id;
      rec.rep = rep;
      rec.seed = derive_seed(seed, static_cast<std::uint64_t>(rep));
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const Solution s = run_solver(g, solver, cfg, rec.seed);
        rec.cut_value = s.cut_value;
        rec.feasible = s.feasible;
      } catch (const std::exception& e) {
        rec.feasible = false;
        rec.cut_value = 0.0;
        rec.error = e.what();
      }
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      report.records.push_back(std::move(rec));
    }
  }

  double sum = 0.0, sum2 = 0.0, sec = 0.0;
  int feasible_count = 0;
  for (const BenchRecord& r : report.records) {
    sec += r.seconds;
    if (r.feasible) {
      sum += r.cut_value;
      sum2 += r.cut_value * r.cut_value;
      ++feasible_count;
    }
  }
  const int total = static_cast<int>(report.records.size());
  if (feasible_count > 0) {
    report.mean_cut = sum / feasible_count;
    const double var = sum2 / feasible_count - report.mean_cut * report.mean_cut;
    report.stddev_cut = std::sqrt(std::max(0.0, var));
  }
  if (total > 0) {
    report.mean_seconds = sec / total;
    report.violation_rate = static_cast<double>(total - feasible_count) / total;
  }
  return report;
}

}  // namespace mmcp
