#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "mmcp/graph.hpp"

namespace mmcp {

enum class AlphaMode {
  Ratio,  // alpha = m / n
  Unit,   // alpha = 1
};

struct RelaxConfig {
  AlphaMode alpha_mode = AlphaMode::Ratio;
  double epsilon = 1e-4;   // penalty floor: penalty == epsilon when the gap reaches its reference scale
  int max_iters = 300;     // gradient steps per restart
  int restarts = 4;
  double step_size = 0.15;  // initial step, normalized by the first gradient's max-norm
  std::uint64_t seed = 0;
  double degeneracy_rel_tol = 1e-6;  // eigenvalue separation threshold, relative to max(1, lambda_max)
  double fd_step = 1e-5;             // central finite-difference step
  bool confidence_order = false;     // round most-decided coordinates first
};

// One relaxed point with its loss breakdown. lambda2/lambda3 are the second
// and third smallest Laplacian eigenvalues of the relaxed adjacency.
struct RelaxedState {
  Eigen::VectorXd x;
  double cost = 0.0;
  double penalty = 0.0;
  double loss = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
};

// Performance-guarantee bookkeeping around rounding. monotone refers to the
// rounding step itself (discrete loss of the rounded point vs. the relaxed
// loss); discrete_loss and cost_bound_holds are updated by solve_relax to
// describe the final assignment after any connectivity repair.
struct GuaranteeReport {
  double relaxed_loss = 0.0;
  double discrete_loss = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_beta = 0.0;        // activation threshold alpha * beta
  bool guarantee_active = false;  // relaxed_loss < alpha_beta
  bool cost_bound_holds = false;  // alpha * cost(final discrete point) < relaxed_loss
  bool monotone = false;          // discrete_loss <= relaxed_loss after rounding
  bool repaired = false;          // connectivity repair ran
  int repair_flips = 0;
};

double alpha_for(const Graph& g, const RelaxConfig& cfg);

// beta = gamma = total edge weight (for unit weights this equals m).
double beta_for(const Graph& g);

// Soft-deletion adjacency: entry (i, j) is (1 - x_i - x_j)^2 when (i, j) is
// an edge of g and 0 otherwise (structure only; weights do not enter).
// Opposite labels zero an entry out, equal labels keep it at full strength.
Eigen::MatrixXd relaxed_adjacency(const Graph& g, const Eigen::VectorXd& x);

// cost = gamma - sum_{(i,j) in E} w_ij (x_i - x_j)^2, i.e. the weight NOT cut.
double cost(const Graph& g, const Eigen::VectorXd& x);

// penalty = exp(-tau * (lambda3 - lambda2)) with tau = -ln(epsilon) / lambda3(G),
// where lambda3(G) is taken on the unweighted structure. Equals 1 at zero gap
// and epsilon when the gap reaches lambda3(G). Requires n >= 3.
double penalty(const Graph& g, const Eigen::VectorXd& x, double epsilon);

// Full loss alpha * cost + beta * penalty with its breakdown.
RelaxedState loss(const Graph& g, const Eigen::VectorXd& x, const RelaxConfig& cfg);

// Analytic gradient via first-order eigenvalue perturbation through the
// relaxed adjacency. Returns nullopt when the spectral structure near
// lambda2/lambda3 is too degenerate for the perturbation formulas (callers
// fall back to finite differences). The lambda1/lambda2 cluster case is
// handled analytically: lambda1 is identically 0, so the two-eigenvalue
// trace rule isolates the lambda2 derivative.
std::optional<Eigen::VectorXd> loss_gradient(const Graph& g, const Eigen::VectorXd& x,
                                             const RelaxConfig& cfg);

// Central finite-difference gradient of the loss (2n evaluations).
Eigen::VectorXd finite_difference_gradient(const Graph& g, const Eigen::VectorXd& x,
                                           const RelaxConfig& cfg);

// Projected gradient descent on [0,1]^n from cfg.restarts random interior
// starts (restart r uses the generator derived from (seed, r)); step size is
// halved on plateaus. Returns the best state seen across all restarts; ties
// prefer the lower restart index, so the result is thread-count independent.
// Requires n >= 3.
RelaxedState optimize(const Graph& g, const RelaxConfig& cfg);

// Two-phase deterministic rounding. Phase 1 fixes coordinates one at a time
// (ascending index, or most-confident-first when cfg.confidence_order) to the
// endpoint with the smaller loss; an exact tie keeps the nearer endpoint
// (0.5 rounds down). Phase 2 runs only when the discrete loss strictly
// exceeds the relaxed loss: it greedily flips the label whose flip minimizes
// the number of zero Laplacian eigenvalues of the induced agreement graph
// (ties to the lowest vertex index), at most n flips, stopping as soon as the
// discrete loss no longer exceeds the relaxed one.
std::pair<Solution, GuaranteeReport> deterministic_round(const Graph& g, const RelaxedState& state,
                                                         const RelaxConfig& cfg);

// Connectivity repair: while the assignment is not a minimal cut, flip the
// vertex whose flip maximizes lambda3 of the induced agreement graph (ties to
// the lowest vertex index), at most n flips, then throw RepairFailed. Returns
// its input unchanged when it is already feasible.
Solution constraint_prior_round(const Graph& g, const Solution& s);

// optimize -> deterministic_round -> constraint_prior_round (only if needed).
// If repair fails the infeasible rounded solution is returned (callers decide
// the fallback). The report's discrete_loss / cost_bound_holds describe the
// final returned assignment; monotone describes the rounding step.
std::pair<Solution, GuaranteeReport> solve_relax(const Graph& g, const RelaxConfig& cfg);

}  // namespace mmcp
