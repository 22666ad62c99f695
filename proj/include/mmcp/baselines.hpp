#pragma once

#include <cstdint>

#include "mmcp/graph.hpp"

namespace mmcp {

// Exhaustive search over all bipartitions, restricted to sides of size at
// most n/2 (every bipartition has such a representative). Enumeration walks
// a Gray code so consecutive subsets differ in one vertex and the crossing
// weight updates incrementally; connectivity is only checked when a subset's
// value actually beats the running best. Parallel over contiguous Gray-index
// ranges; the merged winner is the one with the lowest enumeration index
// among maximal values, so the result does not depend on thread count.
// Throws TooLarge when n exceeds size_cap.
Solution brute_force(const Graph& g, int size_cap = 22);

// Plain reference enumeration (no Gray code, no incremental updates, no
// parallelism); checks every subset with is_minimal_cut and recomputes each
// crossing weight from scratch. Kept as the independent oracle for tests and
// the kernel benchmark.
Solution brute_force_serial(const Graph& g, int size_cap = 22);

// Repeated randomized spanning-tree probing: iteration i shuffles the
// weight-sorted edge order with its own generator derived from (seed, i),
// builds a Kruskal tree and takes its best single-edge cut. Ties across
// iterations go to the lowest iteration index, so results are independent of
// thread layout.
Solution random_tree_search(const Graph& g, int max_iter = 500, std::uint64_t seed = 0);

// Serial twin of random_tree_search (same iteration semantics, no OpenMP).
Solution random_tree_search_serial(const Graph& g, int max_iter = 500, std::uint64_t seed = 0);

struct GeneticConfig {
  int population = 50;
  int max_iter = 100;
  double crossover_rate = 0.8;
  double mutation_rate = 0.02;
  int elite = 1;  // offspring slots replaced by the previous generation's best
  std::uint64_t seed = 0;
};

// Genetic baseline over raw label vectors. Fitness is the cut value for
// minimal cuts and 0 otherwise; selection is linear ranking (probability
// proportional to rank+1), crossover is single-point, mutation flips genes
// independently. If no feasible chromosome is ever seen the result carries
// feasible == false and cut_value 0.
Solution genetic(const Graph& g, const GeneticConfig& cfg);

}  // namespace mmcp
