// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Every tolerance is pinned here as a named constant.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mmcp/baselines.hpp"
#include "mmcp/decompose.hpp"
#include "mmcp/forest.hpp"
#include "mmcp/heuristic.hpp"
#include "mmcp/io.hpp"
#include "mmcp/pipeline.hpp"
#include "mmcp/relax.hpp"
#include "mmcp/rng.hpp"
#include "mmcp/spectral.hpp"
#include "test_util.hpp"

using namespace mmcp;
using namespace testutil;

namespace {

constexpr double kValueTol = 1e-9;       // cut-value comparisons
constexpr double kGradTol = 1e-4;        // analytic vs central-difference gradient
constexpr double kPenaltyTol = 1e-9;     // frozen penalty oracle
constexpr double kExactPenaltyTol = 1e-12;  // penalty values that are exact (0 gap)
constexpr double kInterlaceTol = 1e-9;   // eigenvalue interlacing slack
constexpr double kDecomposeBudget = 60.0;   // seconds, criterion 1
constexpr double kBruteBudget = 2.0;        // seconds, criterion 9
constexpr double kPipelineBudget = 600.0;   // seconds, criterion 8

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: decomposition is lossless -------------------------------

std::string criterion_decomposition() {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) {
    const int n1 = 2 + i % 5;
    const int n2 = 2 + (i / 5) % 6;
    const Graph g = random_bridged_graph(n1, n2, 40000 + static_cast<std::uint64_t>(i));

    const Decomposition d = decompose(g);
    std::vector<ComponentSolution> parts;
    for (const ComponentPart& part : d.components)
      parts.emplace_back(brute_force(part.subgraph), part.vertex_map);
    const Solution assembled = combine(g, d.bridges(g), parts);
    const Solution whole = brute_force(g);

    if (!assembled.feasible || !is_minimal_cut(g, assembled.assignment))
      return "assembled cut infeasible on instance " + std::to_string(i);
    // Weights are small integers, so every cut value is an exact double and
    // assembly must reproduce the direct optimum bit for bit.
    if (assembled.cut_value != whole.cut_value)
      return "instance " + std::to_string(i) + ": assembled " +
             std::to_string(assembled.cut_value) + " vs direct " + std::to_string(whole.cut_value);
  }
  const double dt = seconds_since(t0);
  if (dt > kDecomposeBudget) return "exceeded time budget: " + std::to_string(dt) + " s";
  return "";
}

// ---- criterion 2: every feasible cut is one tree deletion -----------------

std::string criterion_tree_realization() {
  for (int i = 0; i < 100; ++i) {
    const int n = 4 + i % 5;  // 4..8
    const Graph g = random_connected_graph(n, n + 2 + i % n, 41000 + static_cast<std::uint64_t>(i));
    for (const Assignment& a : enumerate_feasible_cuts(g)) {
      const Solution s = make_solution(g, a, Provenance::BruteForce);
      const SpanningTree t = tree_from_cut(g, s);
      const int cross = tree_crossing_edge(g, s);

      Assignment rebuilt(static_cast<std::size_t>(g.n), 0);
      const int start = g.edges[static_cast<std::size_t>(cross)].v;
      std::vector<int> queue{start};
      rebuilt[static_cast<std::size_t>(start)] = 1;
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (const AdjEntry& ae : t.adj[static_cast<std::size_t>(queue[qi])]) {
          if (ae.edge == cross || rebuilt[static_cast<std::size_t>(ae.to)] == 1) continue;
          rebuilt[static_cast<std::size_t>(ae.to)] = 1;
          queue.push_back(ae.to);
        }
      }
      if (rebuilt[0] == 1) rebuilt = complement(std::move(rebuilt));
      if (rebuilt != a) return "instance " + std::to_string(i) + ": deletion does not reproduce the cut";
    }
  }
  return "";
}

// ---- criterion 3: rounding is monotone; active guarantee delivers ---------

std::string criterion_guarantee() {
  // Unit-weight bridgeless instances (relaxation inputs never contain
  // bridges: the pipeline decomposes those away first). The relaxed box
  // minimum of a rare instance can sit strictly below every binary point, in
  // which case no rounding whatsoever can land at or under it; this seeded
  // family was audited against exhaustive enumeration to contain no such
  // instance, so a monotonicity miss here is a genuine rounding regression.
  int active = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 6 + i % 15;  // 6..20
    const int m = std::min(n + 2 + i % n, n * (n - 1) / 2);
    const Graph g = random_bridgeless_graph(n, m, 42000 + static_cast<std::uint64_t>(i));
    RelaxConfig cfg;
    cfg.epsilon = 5e-3;
    cfg.restarts = 2;
    cfg.step_size = 0.15;
    cfg.seed = derive_seed(9000, static_cast<std::uint64_t>(i));
    const auto [sol, rep] = solve_relax(g, cfg);
    if (rep.discrete_loss > rep.relaxed_loss + kValueTol)
      return "instance " + std::to_string(i) + ": rounding overshot the relaxed loss";
    if (rep.guarantee_active) {
      ++active;
      if (!sol.feasible)
        return "instance " + std::to_string(i) + ": active guarantee but infeasible output";
      if (!rep.cost_bound_holds)
        return "instance " + std::to_string(i) + ": active guarantee but cost bound broken";
    }
  }
  if (active == 0) return "the guarantee was never active across 100 runs";
  return " (guarantee active on " + std::to_string(active) + "/100)";
}

// ---- criterion 4: frozen penalty oracles ----------------------------------

std::string criterion_penalty_oracle() {
  const Graph k4 = complete_graph(4);
  Eigen::VectorXd x(4);
  x << 0, 0, 1, 1;
  const double p = penalty(k4, x, 1e-4);
  if (std::abs(p - 0.01) > kPenaltyTol)
    return "balanced 4-clique split: got " + std::to_string(p) + ", expected 0.01";

  const Graph star = build_graph(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  Eigen::VectorXd leaf(4);
  leaf << 0, 0, 0, 1;
  const double ps = penalty(star, leaf, 1e-4);
  if (std::abs(ps - 1e-4) > kPenaltyTol)
    return "star leaf split: got " + std::to_string(ps) + ", expected 1e-4";

  const Graph p4 = path_graph(4);
  Eigen::VectorXd alt(4);
  alt << 0, 1, 0, 1;
  const double pa = penalty(p4, alt, 1e-4);
  if (std::abs(pa - 1.0) > kExactPenaltyTol)
    return "shattered path: got " + std::to_string(pa) + ", expected 1";
  return "";
}

// ---- criterion 5: analytic gradient matches finite differences ------------

std::string criterion_gradient() {
  // 50 non-degenerate points: 5 per graph over 10 graphs covering n = 5..12.
  // Points with a (near-)repeated eigenvalue are redrawn — the analytic form
  // does not exist there and the solver falls back to finite differences.
  RelaxConfig cfg;
  int checked = 0;
  for (int gi = 0; gi < 10; ++gi) {
    const int n = 5 + gi % 8;  // 5..12
    const Graph g = random_connected_graph(n, n + 3 + gi % 5, 43000 + static_cast<std::uint64_t>(gi));
    Rng rng(derive_seed(4242, static_cast<std::uint64_t>(gi)));
    int accepted = 0;
    for (int attempt = 0; attempt < 200 && accepted < 5; ++attempt) {
      Eigen::VectorXd x(g.n);
      for (int k = 0; k < g.n; ++k) x(k) = rng.next_real(0.1, 0.9);

      const auto grad = loss_gradient(g, x, cfg);
      if (!grad) continue;  // degenerate spectrum: redraw
      const Eigen::VectorXd fd = finite_difference_gradient(g, x, cfg);
      for (int k = 0; k < g.n; ++k) {
        const double err = std::abs((*grad)(k) - fd(k));
        if (err > kGradTol * std::max(1.0, std::abs(fd(k))))
          return "graph " + std::to_string(gi) + " point " + std::to_string(accepted) +
                 " component " + std::to_string(k) + ": |analytic - fd| = " + std::to_string(err);
      }
      ++accepted;
      ++checked;
    }
    if (accepted < 5)
      return "graph " + std::to_string(gi) + ": only " + std::to_string(accepted) +
             "/5 non-degenerate points in 200 draws";
  }
  if (checked != 50) return "checked " + std::to_string(checked) + "/50 points";
  return "";
}

// ---- criterion 6: edge deletion interlaces the Laplacian spectrum ---------

std::string criterion_interlacing() {
  for (int i = 0; i < 200; ++i) {
    const int n = 5 + i % 8;
    const Graph g = random_connected_graph(n, n + 2 + i % 6, 44000 + static_cast<std::uint64_t>(i));
    Eigen::MatrixXd adj = weighted_adjacency(g);
    const Eigen::VectorXd mu = laplacian_eigenvalues(adj);

    const Edge& e = g.edges[static_cast<std::size_t>(i % g.m())];
    adj(e.u, e.v) = 0.0;
    adj(e.v, e.u) = 0.0;
    const Eigen::VectorXd nu = laplacian_eigenvalues(adj);

    for (int k = 0; k < n; ++k) {
      if (nu(k) > mu(k) + kInterlaceTol)
        return "pair " + std::to_string(i) + ": nu_" + std::to_string(k) + " exceeds mu";
      if (k + 1 < n && mu(k) > nu(k + 1) + kInterlaceTol)
        return "pair " + std::to_string(i) + ": mu_" + std::to_string(k) + " exceeds nu_" +
               std::to_string(k + 1);
    }
  }
  return "";
}

// ---- criterion 7: tree improvement reaches the optimum on small graphs ----

std::string criterion_heuristic_quality() {
  // Unit-weight bridgeless instances, matching the graphs the improvement
  // stage actually receives (bridges are decomposed away before it runs).
  int exact = 0;
  const int total = 100;
  for (int i = 0; i < total; ++i) {
    const int n = 4 + i % 7;  // 4..10
    const int m = std::min(n + 1 + (i / 7) % std::max(1, n / 2), n * (n - 1) / 2);
    const Graph g = random_bridgeless_graph(n, m, 52000 + static_cast<std::uint64_t>(i));

    std::vector<int> order(static_cast<std::size_t>(g.m()));
    for (int k = 0; k < g.m(); ++k) order[static_cast<std::size_t>(k)] = k;
    Rng rng(derive_seed(777, static_cast<std::uint64_t>(i)));
    rng.shuffle(order);
    const TreeCut start = best_cut_of_tree(g, kruskal_tree(g, order));

    HeuristicConfig cfg;
    const Solution improved = improve(g, start, cfg);
    const Solution opt = brute_force(g);
    if (improved.cut_value > opt.cut_value + kValueTol)
      return "instance " + std::to_string(i) + ": heuristic exceeded the optimum";
    if (!improved.feasible || !is_minimal_cut(g, improved.assignment))
      return "instance " + std::to_string(i) + ": infeasible result";
    if (improved.cut_value < start.solution.cut_value - kValueTol)
      return "instance " + std::to_string(i) + ": heuristic regressed below its start";
    if (std::abs(improved.cut_value - opt.cut_value) <= kValueTol) ++exact;
  }
  if (exact < 90)
    return "optimum reached on only " + std::to_string(exact) + "/" + std::to_string(total);
  return " (" + std::to_string(exact) + "/" + std::to_string(total) + " exact)";
}

// ---- criterion 8: pipeline beats the randomized baseline ------------------

std::string criterion_pipeline_quality() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Graph> sparse, dense;
  for (int i = 0; i < 25; ++i) sparse.push_back(generate_synthetic(20, 40, 46000 + static_cast<std::uint64_t>(i)));
  for (int i = 0; i < 25; ++i) dense.push_back(generate_synthetic(20, 80, 46100 + static_cast<std::uint64_t>(i)));

  PipelineConfig cfg;
  double pioneer_sum = 0.0, rts_sum = 0.0;
  int idx = 0;
  for (const auto* bucket : {&sparse, &dense}) {
    for (const Graph& g : *bucket) {
      const Solution p = run_solver(g, SolverKind::Pioneer, cfg, static_cast<std::uint64_t>(idx));
      if (!p.feasible) return "pipeline infeasible on instance " + std::to_string(idx);
      const Solution r = run_solver(g, SolverKind::RandomTree, cfg, static_cast<std::uint64_t>(idx));
      pioneer_sum += p.cut_value;
      rts_sum += r.cut_value;
      ++idx;
    }
  }
  if (pioneer_sum < rts_sum - kValueTol)
    return "pipeline mean " + std::to_string(pioneer_sum / 50.0) + " below baseline mean " +
           std::to_string(rts_sum / 50.0);

  int violations = 0;
  for (int i = 0; i < 25; ++i) {
    const Solution s = run_solver(dense[static_cast<std::size_t>(i)], SolverKind::RelaxOnly, cfg,
                                  static_cast<std::uint64_t>(i));
    if (!s.feasible) ++violations;
  }
  if (violations != 0)
    return std::to_string(violations) + "/25 relaxation violations on dense instances";

  const double dt = seconds_since(t0);
  if (dt > kPipelineBudget) return "exceeded time budget: " + std::to_string(dt) + " s";
  return " (pipeline mean " + std::to_string(pioneer_sum / 50.0) + ", baseline mean " +
         std::to_string(rts_sum / 50.0) + ")";
}

// ---- criterion 9: exhaustive search is fast and matches its reference -----

std::string criterion_brute_speed() {
  const Graph g = generate_synthetic(16, 40, 2024);
  const auto t0 = std::chrono::steady_clock::now();
  const Solution fast = brute_force(g);
  const double dt = seconds_since(t0);
  const Solution slow = brute_force_serial(g);
  if (std::abs(fast.cut_value - slow.cut_value) > kValueTol)
    return "parallel " + std::to_string(fast.cut_value) + " vs serial " +
           std::to_string(slow.cut_value);
  if (dt > kBruteBudget) return "took " + std::to_string(dt) + " s";
  return " (" + std::to_string(dt) + " s)";
}

// ---- criterion 10: byte-identical records across runs and thread counts ---

std::string criterion_determinism() {
  const Graph g = generate_synthetic(18, 36, 99);
  const std::uint64_t seed = 7;
  PipelineConfig cfg;
  const SolverKind kinds[] = {SolverKind::Pioneer,   SolverKind::Brute,
                              SolverKind::RandomTree, SolverKind::Genetic,
                              SolverKind::RelaxOnly,  SolverKind::HeuristicOnly};
  for (const SolverKind k : kinds) {
    const auto record = [&](const Solution& s) {
      return solution_record("det", g, s, solver_name(k), seed, 0.0).dump();
    };
    const std::string first = record(run_solver(g, k, cfg, seed));
    const std::string second = record(run_solver(g, k, cfg, seed));
    if (first != second) return std::string("rerun mismatch for solver ") + solver_name(k);

#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const std::string serial = record(run_solver(g, k, cfg, seed));
    omp_set_num_threads(saved);
    if (first != serial)
      return std::string("thread-count mismatch for solver ") + solver_name(k);
#endif
  }
  return "";
}

struct Criterion {
  const char* label;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"bridge decomposition solves the whole instance exactly", criterion_decomposition},
      {"every feasible cut is realized by one spanning-tree deletion", criterion_tree_realization},
      {"rounding is monotone and an active guarantee yields a feasible bounded cut", criterion_guarantee},
      {"connectivity penalty matches its frozen closed-form values", criterion_penalty_oracle},
      {"analytic loss gradient matches central finite differences", criterion_gradient},
      {"edge deletion interlaces Laplacian spectra", criterion_interlacing},
      {"tree improvement reaches the exact optimum on >= 90% of small instances", criterion_heuristic_quality},
      {"full pipeline beats the randomized baseline and relaxation holds on dense graphs", criterion_pipeline_quality},
      {"parallel exhaustive search is fast and agrees with its serial reference", criterion_brute_speed},
      {"all solvers emit byte-identical records across reruns and thread counts", criterion_determinism},
  };

  int failures = 0;
  int number = 1;
  for (const Criterion& c : criteria) {
    std::string detail;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const bool ok = detail.empty() || detail[0] == ' ';  // leading space = PASS annotation
    std::printf("%s criterion %d: %s%s\n", ok ? "PASS" : "FAIL", number, c.label,
                ok ? detail.c_str() : (" -- " + detail).c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
    ++number;
  }
  if (failures > 0) std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
