// Compares every parallel kernel against its serial counterpart on one
// mid-size instance each: wall time, speedup, and output equality. The
// exhaustive search and tree sampler have dedicated serial reference
// implementations; the remaining kernels are re-run with the worker pool
// capped at one thread (their results are thread-count invariant by design,
// which is exactly what this binary demonstrates).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mmcp/baselines.hpp"
#include "mmcp/forest.hpp"
#include "mmcp/heuristic.hpp"
#include "mmcp/pipeline.hpp"
#include "mmcp/relax.hpp"
#include "mmcp/rng.hpp"

namespace {

int default_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void cap_threads(int t) {
#ifdef _OPENMP
  omp_set_num_threads(t);
#else
  (void)t;
#endif
}

template <typename F>
auto timed(F&& f, double& seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  auto result = f();
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

struct Row {
  std::string kernel;
  double serial_s = 0.0;
  double parallel_s = 0.0;
  bool match = false;
};

void print_table(const Row* rows, int count, int threads) {
  std::printf("kernel comparison (%d worker threads)\n", threads);
  std::printf("%-28s %12s %12s %9s %7s\n", "kernel", "serial [s]", "parallel [s]", "speedup",
              "match");
  for (int i = 0; i < count; ++i) {
    const Row& r = rows[i];
    const double speedup = r.parallel_s > 0.0 ? r.serial_s / r.parallel_s : 0.0;
    std::printf("%-28s %12.4f %12.4f %8.2fx %7s\n", r.kernel.c_str(), r.serial_s, r.parallel_s,
                speedup, r.match ? "yes" : "NO");
  }
}

bool same_solution(const mmcp::Solution& a, const mmcp::Solution& b) {
  return a.cut_value == b.cut_value && a.assignment == b.assignment && a.feasible == b.feasible;
}

}  // namespace

int main() {
  const int threads = default_threads();
  Row rows[5];

  {
    Row& r = rows[0];
    r.kernel = "exhaustive search (n=18)";
    const mmcp::Graph g = mmcp::generate_synthetic(18, 54, 101);
    const mmcp::Solution serial = timed([&] { return mmcp::brute_force_serial(g); }, r.serial_s);
    const mmcp::Solution parallel = timed([&] { return mmcp::brute_force(g); }, r.parallel_s);
    r.match = std::abs(serial.cut_value - parallel.cut_value) <= 1e-12 && serial.feasible &&
              parallel.feasible;
  }

  {
    Row& r = rows[1];
    r.kernel = "tree sampling (4000 iters)";
    const mmcp::Graph g = mmcp::generate_synthetic(60, 150, 102);
    const mmcp::Solution serial =
        timed([&] { return mmcp::random_tree_search_serial(g, 4000, 5); }, r.serial_s);
    const mmcp::Solution parallel =
        timed([&] { return mmcp::random_tree_search(g, 4000, 5); }, r.parallel_s);
    r.match = same_solution(serial, parallel);
  }

  {
    Row& r = rows[2];
    r.kernel = "relaxation restarts (16)";
    const mmcp::Graph g = mmcp::generate_synthetic(40, 100, 103);
    mmcp::RelaxConfig cfg;
    cfg.restarts = 16;
    cfg.max_iters = 120;
    cap_threads(1);
    const mmcp::RelaxedState serial = timed([&] { return mmcp::optimize(g, cfg); }, r.serial_s);
    cap_threads(threads);
    const mmcp::RelaxedState parallel = timed([&] { return mmcp::optimize(g, cfg); }, r.parallel_s);
    r.match = serial.loss == parallel.loss && (serial.x - parallel.x).norm() == 0.0;
  }

  {
    Row& r = rows[3];
    r.kernel = "genetic fitness (pop 256)";
    const mmcp::Graph g = mmcp::generate_synthetic(60, 180, 104);
    mmcp::GeneticConfig cfg;
    cfg.population = 256;
    cfg.max_iter = 60;
    cfg.seed = 9;
    cap_threads(1);
    const mmcp::Solution serial = timed([&] { return mmcp::genetic(g, cfg); }, r.serial_s);
    cap_threads(threads);
    const mmcp::Solution parallel = timed([&] { return mmcp::genetic(g, cfg); }, r.parallel_s);
    r.match = same_solution(serial, parallel);
  }

  {
    Row& r = rows[4];
    r.kernel = "candidate evaluation";
    const mmcp::Graph g = mmcp::generate_synthetic(120, 360, 105);
    std::vector<int> order(static_cast<std::size_t>(g.m()));
    for (int i = 0; i < g.m(); ++i) order[static_cast<std::size_t>(i)] = i;
    mmcp::Rng rng(3);
    rng.shuffle(order);
    const mmcp::TreeCut start = mmcp::best_cut_of_tree(g, mmcp::kruskal_tree(g, order));
    mmcp::HeuristicConfig cfg;  // BestNeighbor evaluates all candidates per round
    cap_threads(1);
    const mmcp::Solution serial = timed([&] { return mmcp::improve(g, start, cfg); }, r.serial_s);
    cap_threads(threads);
    const mmcp::Solution parallel = timed([&] { return mmcp::improve(g, start, cfg); }, r.parallel_s);
    r.match = same_solution(serial, parallel);
  }

  print_table(rows, 5, threads);

  for (const Row& r : rows) {
    if (!r.match) {
      std::printf("MISMATCH: %s\n", r.kernel.c_str());
      return 1;
    }
  }
  std::printf("all kernels agree with their serial counterparts\n");
  return 0;
}
