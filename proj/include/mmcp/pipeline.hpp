#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mmcp/baselines.hpp"
#include "mmcp/graph.hpp"
#include "mmcp/heuristic.hpp"
#include "mmcp/relax.hpp"

namespace mmcp {

struct PipelineConfig {
  std::uint64_t seed = 0;
  int small_threshold = 16;  // components at most this size are solved exactly
  int brute_cap = 22;
  int rts_iters = 500;
  RelaxConfig relax;          // per-component seeds are derived from `seed`
  HeuristicConfig heuristic;
  GeneticConfig genetic;      // used by the ga solver in bench / run_solver
  bool skip_relax = false;      // ablation: start the heuristic from a random tree
  bool skip_heuristic = false;  // ablation: return the relaxation's rounded cut
};

// Full solving pipeline. The graph is split at its bridges; each bridge-free
// component is solved (exactly when small, otherwise relaxation -> rounding
// -> spanning-tree improvement, degrading to random tree search when a stage
// fails) and the best of all bridge cuts and lifted component cuts wins.
Solution pioneer(const Graph& g, const PipelineConfig& cfg);

// Random connected bridgeless instance: each vertex gets a digit 0..9, an
// m-subset of vertex pairs is drawn uniformly, and the edge weight is
// v_i + v_j + v_i * v_j (floored to 1e-6 when both digits are 0). Resamples
// the edge set until the graph is connected and bridgeless; throws
// InfeasibleShape when m is out of range or 1000 attempts all fail.
Graph generate_synthetic(int n, int m, std::uint64_t seed);

enum class SolverKind { Pioneer, Brute, RandomTree, Genetic, RelaxOnly, HeuristicOnly };

const char* solver_name(SolverKind k);
SolverKind solver_from_name(const std::string& name);  // throws ParseError

// Runs one solver on one graph with one seed. RelaxOnly decomposes and runs
// the relaxation on every component with no exact-small routing and no
// heuristic; if any component comes back infeasible the whole result is
// infeasible with cut 0 (a counted violation). HeuristicOnly is the pipeline
// with skip_relax.
Solution run_solver(const Graph& g, SolverKind solver, const PipelineConfig& cfg,
                    std::uint64_t seed);

struct BenchRecord {
  std::string graph_id;
  int rep = 0;
  std::uint64_t seed = 0;
  double cut_value = 0.0;
  bool feasible = false;
  double seconds = 0.0;
  std::string error;  // nonempty when the solver failed on this instance
};

struct BenchReport {
  std::string solver;
  int reps = 0;
  std::vector<BenchRecord> records;
  double mean_cut = 0.0;     // over feasible records
  double stddev_cut = 0.0;   // population stddev over feasible records
  double mean_seconds = 0.0; // over all records
  double violation_rate = 0.0;
};

// Runs `solver` `reps` times per input (rep r uses the seed derived from
// (seed, r)) and aggregates. Solver errors on an instance are recorded as
// failed records, not thrown.
BenchReport bench(const std::vector<std::pair<std::string, Graph>>& inputs, SolverKind solver,
                  const PipelineConfig& cfg, int reps, std::uint64_t seed);

}  // namespace mmcp
