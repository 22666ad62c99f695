#include "mmcp/relax.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include "mmcp/rng.hpp"
#include "mmcp/spectral.hpp"

namespace mmcp {

double alpha_for(const Graph& g, const RelaxConfig& cfg) {
  return cfg.alpha_mode == AlphaMode::Ratio ? static_cast<double>(g.m()) / static_cast<double>(g.n)
                                            : 1.0;
}

double beta_for(const Graph& g) { return g.total_weight(); }

Eigen::MatrixXd relaxed_adjacency(const Graph& g, const Eigen::VectorXd& x) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const Edge& e : g.edges) {
    const double s = 1.0 - x(e.u) - x(e.v);
    a(e.u, e.v) = s * s;
    a(e.v, e.u) = s * s;
  }
  return a;
}

double cost(const Graph& g, const Eigen::VectorXd& x) {
  double removed = 0.0;
  for (const Edge& e : g.edges) {
    const double d = x(e.u) - x(e.v);
    removed += e.w * d * d;
  }
  return g.total_weight() - removed;
}

namespace {

// Shared precomputation for repeated loss/gradient evaluations on one graph.
struct Workspace {
  const Graph& g;
  double alpha;
  double beta;
  double tau;          // -ln(epsilon) / lambda3_ref, positive
  double lambda3_ref;  // third smallest Laplacian eigenvalue of the structure

  Workspace(const Graph& graph, const RelaxConfig& cfg) : g(graph) {
    if (g.n < 3)
      throw Error("connectivity penalty needs at least three vertices, got n = " +
                  std::to_string(g.n));
    alpha = alpha_for(g, cfg);
    beta = beta_for(g);
    const Eigen::VectorXd ref = laplacian_eigenvalues(structure_adjacency(g), 3);
    lambda3_ref = ref(2);
    tau = -std::log(cfg.epsilon) / lambda3_ref;
  }

  RelaxedState state_from(const Eigen::VectorXd& x, const Eigen::VectorXd& evals) const {
    RelaxedState st;
    st.x = x;
    st.lambda2 = evals(1);
    st.lambda3 = evals(2);
    st.cost = mmcp::cost(g, x);
    st.penalty = std::exp(-tau * (st.lambda3 - st.lambda2));
    st.loss = alpha * st.cost + beta * st.penalty;
    return st;
  }

  RelaxedState eval(const Eigen::VectorXd& x) const {
    return state_from(x, laplacian_eigenvalues(relaxed_adjacency(g, x)));
  }
};

// Accumulates the derivative of v^T L'(x) v with respect to every x_k, where
// L' is the Laplacian of the relaxed adjacency. Only edges touching k
// contribute: d/dx_k [ (1 - x_i - x_j)^2 (v_i - v_j)^2 ] = -2 (1-x_i-x_j)(v_i-v_j)^2.
void add_eigenvalue_derivative(const Graph& g, const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                               double coeff, Eigen::VectorXd& out) {
  for (const Edge& e : g.edges) {
    const double s = 1.0 - x(e.u) - x(e.v);
    const double dv = v(e.u) - v(e.v);
    const double contrib = -2.0 * s * dv * dv * coeff;
    out(e.u) += contrib;
    out(e.v) += contrib;
  }
}

std::optional<Eigen::VectorXd> gradient_from_system(const Workspace& w, const Eigen::VectorXd& x,
                                                    const EigenSystem& sys, double rel_tol) {
  const Graph& g = w.g;
  const int n = g.n;
  const double lmax = sys.values(n - 1);
  const double tol = rel_tol * std::max(1.0, lmax);
  const double l1 = sys.values(0), l2 = sys.values(1), l3 = sys.values(2);

  // The gap derivative needs lambda2 and lambda3 to be distinguishable, and
  // lambda3 must be separated from lambda4 as well.
  if (l3 - l2 <= tol) return std::nullopt;
  if (n > 3 && sys.values(3) - l3 <= tol) return std::nullopt;

  Eigen::VectorXd d_lambda2 = Eigen::VectorXd::Zero(n);
  if (l2 - l1 > tol) {
    add_eigenvalue_derivative(g, x, sys.vectors.col(1), 1.0, d_lambda2);
  } else {
    // lambda1 == 0 identically (constant null vector), so d(lambda1) == 0 and
    // the trace rule over the {lambda1, lambda2} cluster isolates d(lambda2).
    add_eigenvalue_derivative(g, x, sys.vectors.col(0), 1.0, d_lambda2);
    add_eigenvalue_derivative(g, x, sys.vectors.col(1), 1.0, d_lambda2);
  }
  Eigen::VectorXd d_lambda3 = Eigen::VectorXd::Zero(n);
  add_eigenvalue_derivative(g, x, sys.vectors.col(2), 1.0, d_lambda3);

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
  for (const Edge& e : g.edges) {  // alpha * d(cost)
    const double d = x(e.u) - x(e.v);
    grad(e.u) += -2.0 * w.alpha * e.w * d;
    grad(e.v) += +2.0 * w.alpha * e.w * d;
  }
  const double pen = std::exp(-w.tau * (l3 - l2));
  grad += w.beta * pen * (-w.tau) * (d_lambda3 - d_lambda2);
  return grad;
}

Eigen::VectorXd fd_gradient(const Workspace& w, const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd grad(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    probe(k) = x(k) + h;
    const double up = w.eval(probe).loss;
    probe(k) = x(k) - h;
    const double dn = w.eval(probe).loss;
    probe(k) = x(k);
    grad(k) = (up - dn) / (2.0 * h);
  }
  return grad;
}

Assignment vector_to_assignment(const Eigen::VectorXd& y) {
  Assignment a(static_cast<std::size_t>(y.size()), 0);
  for (Eigen::Index i = 0; i < y.size(); ++i)
    a[static_cast<std::size_t>(i)] = y(i) >= 0.5 ? 1 : 0;
  return a;
}

Eigen::VectorXd assignment_to_vector(const Assignment& a) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) y(static_cast<Eigen::Index>(i)) = a[i];
  return y;
}

}  // namespace

double penalty(const Graph& g, const Eigen::VectorXd& x, double epsilon) {
  RelaxConfig cfg;
  cfg.epsilon = epsilon;
  const Workspace w(g, cfg);
  const Eigen::VectorXd evals = laplacian_eigenvalues(relaxed_adjacency(g, x), 3);
  return std::exp(-w.tau * (evals(2) - evals(1)));
}

RelaxedState loss(const Graph& g, const Eigen::VectorXd& x, const RelaxConfig& cfg) {
  return Workspace(g, cfg).eval(x);
}

std::optional<Eigen::VectorXd> loss_gradient(const Graph& g, const Eigen::VectorXd& x,
                                             const RelaxConfig& cfg) {
  const Workspace w(g, cfg);
  const EigenSystem sys = laplacian_eigensystem(relaxed_adjacency(g, x));
  return gradient_from_system(w, x, sys, cfg.degeneracy_rel_tol);
}

Eigen::VectorXd finite_difference_gradient(const Graph& g, const Eigen::VectorXd& x,
                                           const RelaxConfig& cfg) {
  return fd_gradient(Workspace(g, cfg), x, cfg.fd_step);
}

RelaxedState optimize(const Graph& g, const RelaxConfig& cfg) {
  const Workspace w(g, cfg);
  const int restarts = std::max(1, cfg.restarts);
  std::vector<RelaxedState> results(static_cast<std::size_t>(restarts));
  std::vector<std::uint8_t> ok(static_cast<std::size_t>(restarts), 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int r = 0; r < restarts; ++r) {
    try {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
      Eigen::VectorXd x(g.n);
      for (int i = 0; i < g.n; ++i) x(i) = rng.next_real(0.2, 0.8);

      RelaxedState best;
      best.loss = std::numeric_limits<double>::infinity();
      double step = 0.0, step0 = 0.0;
      int stall = 0;
      for (int iter = 0; iter <= cfg.max_iters; ++iter) {
        const EigenSystem sys = laplacian_eigensystem(relaxed_adjacency(g, x));
        const RelaxedState st = w.state_from(x, sys.values);
        if (st.loss < best.loss - 1e-12) {
          best = st;
          stall = 0;
        } else if (++stall >= 12) {
          step *= 0.5;
          stall = 0;
          if (step0 > 0.0 && step < 1e-8 * step0) break;
        }
        if (iter == cfg.max_iters) break;

        std::optional<Eigen::VectorXd> grad = gradient_from_system(w, x, sys, cfg.degeneracy_rel_tol);
        if (!grad) grad = fd_gradient(w, x, cfg.fd_step);
        if (iter == 0) {
          step0 = step = cfg.step_size / std::max(1.0, grad->lpNorm<Eigen::Infinity>());
        }
        x = (x - step * (*grad)).cwiseMax(0.0).cwiseMin(1.0);
      }
      results[static_cast<std::size_t>(r)] = std::move(best);
      ok[static_cast<std::size_t>(r)] = 1;
    } catch (const Error&) {
      ok[static_cast<std::size_t>(r)] = 0;  // restart skipped (e.g. eigensolver failure)
    }
  }

  int best_r = -1;
  for (int r = 0; r < restarts; ++r) {
    if (!ok[static_cast<std::size_t>(r)]) continue;
    if (best_r < 0 || results[static_cast<std::size_t>(r)].loss < results[static_cast<std::size_t>(best_r)].loss)
      best_r = r;
  }
  if (best_r < 0) throw EigenFailure("all optimizer restarts failed");
  return results[static_cast<std::size_t>(best_r)];
}

std::pair<Solution, GuaranteeReport> deterministic_round(const Graph& g, const RelaxedState& state,
                                                         const RelaxConfig& cfg) {
  const Workspace w(g, cfg);
  const int n = g.n;

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  if (cfg.confidence_order) {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(state.x(a) - 0.5) > std::abs(state.x(b) - 0.5);
    });
  }

  // Phase 1: fix one coordinate at a time to its loss-minimizing endpoint.
  Eigen::VectorXd y = state.x;
  for (int idx : order) {
    y(idx) = 0.0;
    const double l0 = w.eval(y).loss;
    y(idx) = 1.0;
    const double l1 = w.eval(y).loss;
    if (l0 < l1)
      y(idx) = 0.0;
    else if (l1 < l0)
      y(idx) = 1.0;
    else
      y(idx) = state.x(idx) > 0.5 ? 1.0 : 0.0;  // tie: nearer endpoint, 0.5 rounds down
  }

  Assignment a = vector_to_assignment(y);
  double discrete_loss = w.eval(y).loss;

  // Phase 2: runs whenever the phase-one corner fails to land strictly below
  // the relaxed loss. Phase one anchors to the corner of the current basin,
  // which a first-order minimizer with a fractional coordinate can undercut,
  // so this pass walks a path of corners: each step flips one not-yet-flipped
  // entry, chosen to minimize the number of agreement-graph components (the
  // zero-eigenvalue count of the induced Laplacian). Ties are broken by the
  // smallest loss reachable within one further flip, which lets the walk
  // steer across single-flip loss barriers; every entry flips at most once
  // (at most n flips) and the best assignment seen wins. On larger graphs the
  // lookahead's cubic number of loss evaluations is too hot, so the tie-break
  // degrades to the plain one-flip loss.
  if (discrete_loss >= state.loss) {
    const bool lookahead = n <= 32;
    Assignment best_a = a;
    double best_seen = discrete_loss;
    bool best_feasible = agreement_components(g, a).count == 2;
    bool done = best_feasible && discrete_loss <= state.loss;
    std::vector<std::uint8_t> flipped(static_cast<std::size_t>(n), 0);
    for (int step = 0; step < n && !done; ++step) {
      int best_k = -1;
      int best_count = std::numeric_limits<int>::max();
      double best_key = std::numeric_limits<double>::infinity();
      double best_loss = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n; ++k) {
        if (flipped[static_cast<std::size_t>(k)]) continue;
        a[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(1 - a[static_cast<std::size_t>(k)]);
        y(k) = a[static_cast<std::size_t>(k)];
        const int count = agreement_components(g, a).count;
        if (count <= best_count) {
          const double l = w.eval(y).loss;
          double key = l;
          if (lookahead) {
            for (int j = 0; j < n; ++j) {
              if (j == k) continue;
              y(j) = 1.0 - y(j);
              key = std::min(key, w.eval(y).loss);
              y(j) = 1.0 - y(j);
            }
          }
          if (count < best_count || key < best_key) {
            best_count = count;
            best_key = key;
            best_loss = l;
            best_k = k;
          }
        }
        a[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(1 - a[static_cast<std::size_t>(k)]);
        y(k) = a[static_cast<std::size_t>(k)];
      }
      if (best_k < 0) break;
      flipped[static_cast<std::size_t>(best_k)] = 1;
      a[static_cast<std::size_t>(best_k)] =
          static_cast<std::uint8_t>(1 - a[static_cast<std::size_t>(best_k)]);
      y(best_k) = a[static_cast<std::size_t>(best_k)];
      const bool feasible = best_count == 2;
      // A feasible corner beats any infeasible one: keeping an infeasible
      // "best" would hand the connectivity repair an assignment whose fixed-up
      // loss is unbounded, defeating the point of the walk.
      if ((feasible && !best_feasible) ||
          (feasible == best_feasible && best_loss < best_seen)) {
        best_seen = best_loss;
        best_a = a;
        best_feasible = feasible;
      }
      done = best_feasible && best_seen <= state.loss;
    }
    a = best_a;
    discrete_loss = best_seen;
    for (int k = 0; k < n; ++k) y(k) = a[static_cast<std::size_t>(k)];
  }

  GuaranteeReport rep;
  rep.relaxed_loss = state.loss;
  rep.discrete_loss = discrete_loss;
  rep.alpha = w.alpha;
  rep.beta = w.beta;
  rep.alpha_beta = w.alpha * w.beta;
  rep.guarantee_active = state.loss < rep.alpha_beta;
  rep.cost_bound_holds = w.alpha * mmcp::cost(g, y) < state.loss;
  rep.monotone = discrete_loss <= state.loss;
  return {make_solution(g, std::move(a), Provenance::Relaxation), rep};
}

Solution constraint_prior_round(const Graph& g, const Solution& s) {
  if (is_minimal_cut(g, s.assignment)) return s;
  Assignment a = s.assignment;
  if (g.n == 2) {  // the only minimal cut is {0} | {1}
    return make_solution(g, Assignment{0, 1}, s.provenance);
  }

  int last_flip = -1;
  for (int flips = 0; flips < g.n; ++flips) {
    int ones = 0;
    for (int k = 0; k < g.n; ++k) ones += a[static_cast<std::size_t>(k)];
    int best_k = -1;
    double best_l3 = -std::numeric_limits<double>::infinity();
    int best_count = std::numeric_limits<int>::max();
    double best_cut = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < g.n; ++k) {
      // Undoing the previous flip would two-cycle until the budget runs out.
      if (k == last_flip) continue;
      // A flip that empties one side is not a cut at all; its agreement graph
      // is the whole graph, whose large λ3 would otherwise win every argmax.
      const int side = a[static_cast<std::size_t>(k)];
      if ((side == 1 && ones == 1) || (side == 0 && ones == g.n - 1)) continue;
      a[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(1 - a[static_cast<std::size_t>(k)]);
      Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(g.n, g.n);
      double cut = 0.0;
      for (const Edge& e : g.edges) {
        if (a[static_cast<std::size_t>(e.u)] == a[static_cast<std::size_t>(e.v)]) {
          adj(e.u, e.v) = 1.0;
          adj(e.v, e.u) = 1.0;
        } else {
          cut += e.w;
        }
      }
      const double l3 = laplacian_eigenvalues(adj, 3)(2);
      const int count = agreement_components(g, a).count;
      a[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(1 - a[static_cast<std::size_t>(k)]);
      // λ3 is the objective; with three or more components every candidate's
      // λ3 is zero, so ties fall through to fewer components, then larger cut.
      if (std::make_tuple(l3, -count, cut) > std::make_tuple(best_l3, -best_count, best_cut)) {
        best_l3 = l3;
        best_count = count;
        best_cut = cut;
        best_k = k;
      }
    }
    if (best_k < 0) break;
    a[static_cast<std::size_t>(best_k)] =
        static_cast<std::uint8_t>(1 - a[static_cast<std::size_t>(best_k)]);
    last_flip = best_k;
    if (agreement_components(g, a).count == 2) return make_solution(g, std::move(a), s.provenance);
  }
  throw RepairFailed("connectivity repair exhausted its flip budget of n = " + std::to_string(g.n));
}

std::pair<Solution, GuaranteeReport> solve_relax(const Graph& g, const RelaxConfig& cfg) {
  if (g.n < 2) throw NoCandidates("single-vertex graph admits no cut");
  if (g.n == 2) {
    GuaranteeReport rep;
    rep.alpha = alpha_for(g, cfg);
    rep.beta = beta_for(g);
    rep.alpha_beta = rep.alpha * rep.beta;
    rep.monotone = true;
    return {make_solution(g, Assignment{0, 1}, Provenance::Relaxation), rep};
  }

  const RelaxedState state = optimize(g, cfg);
  auto [sol, rep] = deterministic_round(g, state, cfg);
  if (!sol.feasible) {
    try {
      const Solution repaired = constraint_prior_round(g, sol);
      int flips = 0;
      for (std::size_t i = 0; i < repaired.assignment.size(); ++i)
        if (repaired.assignment[i] != sol.assignment[i]) ++flips;
      sol = repaired;
      rep.repaired = true;
      rep.repair_flips = flips;
    } catch (const RepairFailed&) {
      // Keep the infeasible rounded assignment; the caller picks the fallback.
    }
  }

  // Make the report describe the returned assignment.
  const Workspace w(g, cfg);
  const Eigen::VectorXd yfinal = assignment_to_vector(sol.assignment);
  rep.discrete_loss = w.eval(yfinal).loss;
  rep.cost_bound_holds = w.alpha * mmcp::cost(g, yfinal) < rep.relaxed_loss;
  rep.monotone = rep.discrete_loss <= rep.relaxed_loss;
  return {std::move(sol), rep};
}

}  // namespace mmcp
