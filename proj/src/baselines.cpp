#include "mmcp/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mmcp/forest.hpp"
#include "mmcp/rng.hpp"

namespace mmcp {

namespace {

inline std::uint64_t gray(std::uint64_t i) { return i ^ (i >> 1); }

// Connectivity of the sub-bitmask `side` under bitmask adjacency.
bool side_connected(const std::vector<std::uint64_t>& adj_mask, std::uint64_t side) {
  if (side == 0) return false;
  const std::uint64_t start = side & (~side + 1);
  std::uint64_t reached = start;
  std::uint64_t frontier = start;
  while (frontier) {
    std::uint64_t nxt = 0;
    std::uint64_t f = frontier;
    while (f) {
      const int v = std::countr_zero(f);
      f &= f - 1;
      nxt |= adj_mask[static_cast<std::size_t>(v)];
    }
    frontier = nxt & side & ~reached;
    reached |= frontier;
  }
  return reached == side;
}

Assignment mask_to_assignment(std::uint64_t mask, int n) {
  Assignment a(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    if (mask & (1ULL << v)) a[static_cast<std::size_t>(v)] = 1;
  if (a[0] == 1) a = complement(std::move(a));
  return a;
}

struct MaskCandidate {
  double value = -1.0;
  std::uint64_t index = 0;  // global enumeration index; lower wins on ties
  std::uint64_t mask = 0;
  bool valid = false;

  bool better_than(const MaskCandidate& o) const {
    if (!o.valid) return valid;
    if (!valid) return false;
    if (value != o.value) return value > o.value;
    return index < o.index;
  }
};

double exact_crossing(const Graph& g, std::uint64_t mask) {
  double s = 0.0;
  for (const Edge& e : g.edges) {
    const std::uint64_t bu = (mask >> e.u) & 1ULL;
    const std::uint64_t bv = (mask >> e.v) & 1ULL;
    if (bu != bv) s += e.w;
  }
  return s;
}

void check_size_cap(const Graph& g, int size_cap) {
  if (g.n > size_cap)
    throw TooLarge("exhaustive search capped at n = " + std::to_string(size_cap) + ", got n = " +
                   std::to_string(g.n));
  if (g.n > 62) throw TooLarge("exhaustive search uses 64-bit subset masks");
}

}  // namespace

Solution brute_force(const Graph& g, int size_cap) {
  check_size_cap(g, size_cap);
  const int n = g.n;
  if (n == 1) throw NoCandidates("single-vertex graph admits no cut");

  std::vector<std::uint64_t> adj_mask(static_cast<std::size_t>(n), 0);
  for (const Edge& e : g.edges) {
    adj_mask[static_cast<std::size_t>(e.u)] |= 1ULL << e.v;
    adj_mask[static_cast<std::size_t>(e.v)] |= 1ULL << e.u;
  }
  const std::uint64_t total = 1ULL << n;

  // Incremental crossing weights drift by floating rounding over millions of
  // updates, so the incremental value is used only as a pruning signal with a
  // safety slack; real candidates are re-summed exactly in edge-index order,
  // which keeps values bit-identical to the serial reference.
  const double slack = 1e-4;

  // Chunk layout depends only on the instance size, never on thread count.
  const std::uint64_t chunk_count = std::max<std::uint64_t>(1, std::min<std::uint64_t>(256, total >> 12));
  std::vector<MaskCandidate> chunk_best(chunk_count);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunk_count); ++c) {
    const std::uint64_t lo = total / chunk_count * static_cast<std::uint64_t>(c) +
                             std::min<std::uint64_t>(static_cast<std::uint64_t>(c), total % chunk_count);
    const std::uint64_t hi = lo + total / chunk_count +
                             (static_cast<std::uint64_t>(c) < total % chunk_count ? 1 : 0);
    std::uint64_t mask = gray(lo);
    double crossing = exact_crossing(g, mask);
    MaskCandidate best;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const int pc = std::popcount(mask);
      if (pc >= 1 && 2 * pc <= n && (!best.valid || crossing > best.value - slack)) {
        const double exact = exact_crossing(g, mask);
        if ((!best.valid || exact > best.value) && side_connected(adj_mask, mask) &&
            side_connected(adj_mask, (total - 1) ^ mask)) {
          best.value = exact;
          best.index = i;
          best.mask = mask;
          best.valid = true;
        }
      }
      if (i + 1 < total) {
        const int b = std::countr_zero(i + 1);
        mask ^= 1ULL << b;
        const std::uint64_t side_now = (mask >> b) & 1ULL;
        for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(b)]) {
          const double w = g.edges[static_cast<std::size_t>(ae.edge)].w;
          if (((mask >> ae.to) & 1ULL) == side_now)
            crossing -= w;  // was crossing before the flip
          else
            crossing += w;
        }
      }
    }
    chunk_best[static_cast<std::size_t>(c)] = best;
  }

  MaskCandidate winner;
  for (const MaskCandidate& cand : chunk_best)
    if (cand.better_than(winner)) winner = cand;
  if (!winner.valid) throw NoCandidates("no connected bipartition found");

  Solution s = make_solution(g, mask_to_assignment(winner.mask, n), Provenance::BruteForce);
  return s;
}

Solution brute_force_serial(const Graph& g, int size_cap) {
  check_size_cap(g, size_cap);
  const int n = g.n;
  if (n == 1) throw NoCandidates("single-vertex graph admits no cut");

  double best_value = -1.0;
  std::uint64_t best_mask = 0;
  bool found = false;
  for (std::uint64_t mask = 1; mask + 1 < (1ULL << n); ++mask) {
    const int pc = std::popcount(mask);
    if (pc < 1 || 2 * pc > n) continue;
    const Assignment a = mask_to_assignment(mask, n);
    const double val = cut_value(g, a);
    if ((!found || val > best_value) && is_minimal_cut(g, a)) {
      best_value = val;
      best_mask = mask;
      found = true;
    }
  }
  if (!found) throw NoCandidates("no connected bipartition found");
  return make_solution(g, mask_to_assignment(best_mask, n), Provenance::BruteForce);
}

namespace {

struct IterCandidate {
  double value = -1.0;
  int iter = std::numeric_limits<int>::max();
  Solution solution;

  bool better_than(const IterCandidate& o) const {
    if (value != o.value) return value > o.value;
    return iter < o.iter;
  }
};

std::vector<int> weight_sorted_edge_order(const Graph& g) {
  std::vector<int> order(static_cast<std::size_t>(g.m()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double wa = g.edges[static_cast<std::size_t>(a)].w;
    const double wb = g.edges[static_cast<std::size_t>(b)].w;
    if (wa != wb) return wa < wb;
    return a < b;
  });
  return order;
}

IterCandidate random_tree_iteration(const Graph& g, const std::vector<int>& base_order, int iter,
                                    std::uint64_t seed) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(iter)));
  std::vector<int> order = base_order;
  rng.shuffle(order);
  const SpanningTree t = kruskal_tree(g, order);
  TreeCut tc = best_cut_of_tree(g, t);
  IterCandidate out;
  out.value = tc.solution.cut_value;
  out.iter = iter;
  out.solution = std::move(tc.solution);
  return out;
}

Solution random_tree_search_impl(const Graph& g, int max_iter, std::uint64_t seed, bool parallel) {
  if (g.n < 2) throw NoCandidates("single-vertex graph admits no cut");
  if (max_iter < 1) max_iter = 1;
  const std::vector<int> base_order = weight_sorted_edge_order(g);

  IterCandidate winner;
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      IterCandidate local;
#pragma omp for schedule(dynamic, 8) nowait
      for (int i = 0; i < max_iter; ++i) {
        IterCandidate cand = random_tree_iteration(g, base_order, i, seed);
        if (cand.better_than(local)) local = std::move(cand);
      }
#pragma omp critical(mmcp_rts_merge)
      {
        if (local.better_than(winner)) winner = std::move(local);
      }
    }
#else
    parallel = false;
#endif
  }
  if (!parallel) {
    for (int i = 0; i < max_iter; ++i) {
      IterCandidate cand = random_tree_iteration(g, base_order, i, seed);
      if (cand.better_than(winner)) winner = std::move(cand);
    }
  }
  winner.solution.provenance = Provenance::RandomTree;
  return std::move(winner.solution);
}

}  // namespace

Solution random_tree_search(const Graph& g, int max_iter, std::uint64_t seed) {
  return random_tree_search_impl(g, max_iter, seed, true);
}

Solution random_tree_search_serial(const Graph& g, int max_iter, std::uint64_t seed) {
  return random_tree_search_impl(g, max_iter, seed, false);
}

namespace {

using Chromosome = Assignment;

double chromosome_fitness(const Graph& g, const Chromosome& c) {
  return is_minimal_cut(g, c) ? cut_value(g, c) : 0.0;
}

// Index of the best (max fitness, first on ties) and worst (min fitness,
// first on ties) member.
int argbest(const std::vector<double>& fit) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(fit.size()); ++i)
    if (fit[static_cast<std::size_t>(i)] > fit[static_cast<std::size_t>(best)]) best = i;
  return best;
}

int argworst(const std::vector<double>& fit) {
  int worst = 0;
  for (int i = 1; i < static_cast<int>(fit.size()); ++i)
    if (fit[static_cast<std::size_t>(i)] < fit[static_cast<std::size_t>(worst)]) worst = i;
  return worst;
}

}  // namespace

Solution genetic(const Graph& g, const GeneticConfig& cfg) {
  if (g.n < 2) throw NoCandidates("single-vertex graph admits no cut");
  const int pop_size = std::max(2, cfg.population);
  const std::size_t un = static_cast<std::size_t>(g.n);
  Rng master(cfg.seed);

  std::vector<Chromosome> pop(static_cast<std::size_t>(pop_size), Chromosome(un, 0));
  for (auto& c : pop)
    for (auto& gene : c) gene = static_cast<std::uint8_t>(master.next_below(2));

  std::vector<double> fit(static_cast<std::size_t>(pop_size), 0.0);
  auto evaluate = [&](const std::vector<Chromosome>& p, std::vector<double>& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < pop_size; ++i)
      f[static_cast<std::size_t>(i)] = chromosome_fitness(g, p[static_cast<std::size_t>(i)]);
  };
  evaluate(pop, fit);

  Chromosome best_chrom = pop[static_cast<std::size_t>(argbest(fit))];
  double best_fit = fit[static_cast<std::size_t>(argbest(fit))];

  // Linear ranking: worst member gets weight 1, best gets weight pop_size.
  std::vector<int> rank_order(static_cast<std::size_t>(pop_size));
  auto pick_parent = [&]() {
    const std::uint64_t total =
        static_cast<std::uint64_t>(pop_size) * static_cast<std::uint64_t>(pop_size + 1) / 2;
    std::uint64_t r = master.next_below(total);
    for (int rank = 0; rank < pop_size; ++rank) {
      const std::uint64_t weight = static_cast<std::uint64_t>(rank + 1);
      if (r < weight) return rank_order[static_cast<std::size_t>(rank)];
      r -= weight;
    }
    return rank_order[static_cast<std::size_t>(pop_size - 1)];
  };

  std::vector<Chromosome> offspring(static_cast<std::size_t>(pop_size));
  std::vector<double> off_fit(static_cast<std::size_t>(pop_size), 0.0);
  for (int gen = 0; gen < cfg.max_iter; ++gen) {
    std::iota(rank_order.begin(), rank_order.end(), 0);
    std::stable_sort(rank_order.begin(), rank_order.end(), [&](int a, int b) {
      return fit[static_cast<std::size_t>(a)] < fit[static_cast<std::size_t>(b)];
    });

    for (int k = 0; k < pop_size; ++k) {
      const Chromosome& pa = pop[static_cast<std::size_t>(pick_parent())];
      const Chromosome& pb = pop[static_cast<std::size_t>(pick_parent())];
      Chromosome child = pa;
      if (g.n >= 2 && master.next_bool(cfg.crossover_rate)) {
        const int cut = master.next_int(1, g.n - 1);
        std::copy(pb.begin() + cut, pb.end(), child.begin() + cut);
      }
      for (auto& gene : child)
        if (master.next_bool(cfg.mutation_rate)) gene = static_cast<std::uint8_t>(1 - gene);
      offspring[static_cast<std::size_t>(k)] = std::move(child);
    }
    evaluate(offspring, off_fit);

    for (int e = 0; e < std::min(cfg.elite, pop_size); ++e) {
      const int slot = argworst(off_fit);
      offspring[static_cast<std::size_t>(slot)] = best_chrom;
      off_fit[static_cast<std::size_t>(slot)] = best_fit;
    }
    pop.swap(offspring);
    fit.swap(off_fit);

    const int b = argbest(fit);
    if (fit[static_cast<std::size_t>(b)] > best_fit) {
      best_fit = fit[static_cast<std::size_t>(b)];
      best_chrom = pop[static_cast<std::size_t>(b)];
    }
  }

  Solution s = make_solution(g, std::move(best_chrom), Provenance::Genetic);
  if (!s.feasible) {
    s.cut_value = 0.0;  // no feasible chromosome ever seen
  }
  return s;
}

}  // namespace mmcp
