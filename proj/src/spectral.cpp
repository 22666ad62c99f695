#include "mmcp/spectral.hpp"

#include <algorithm>
#include <string>

namespace mmcp {

Eigen::MatrixXd structure_adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const Edge& e : g.edges) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

Eigen::MatrixXd weighted_adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const Edge& e : g.edges) {
    a(e.u, e.v) = e.w;
    a(e.v, e.u) = e.w;
  }
  return a;
}

Eigen::MatrixXd laplacian(const Eigen::MatrixXd& adjacency) {
  Eigen::MatrixXd l = -adjacency;
  const Eigen::VectorXd deg = adjacency.rowwise().sum();
  l.diagonal() = deg;
  return l;
}

namespace {

void check_dim(const Eigen::MatrixXd& adjacency) {
  if (adjacency.rows() != adjacency.cols())
    throw EigenFailure("adjacency matrix is not square");
  if (adjacency.rows() > kMaxEigenDim)
    throw UnsupportedScale("dense eigendecomposition capped at n = " +
                           std::to_string(kMaxEigenDim) + ", got n = " +
                           std::to_string(adjacency.rows()));
}

}  // namespace

Eigen::VectorXd laplacian_eigenvalues(const Eigen::MatrixXd& adjacency) {
  check_dim(adjacency);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(laplacian(adjacency), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw EigenFailure("symmetric eigensolver did not converge");
  return solver.eigenvalues();
}

Eigen::VectorXd laplacian_eigenvalues(const Eigen::MatrixXd& adjacency, int k) {
  Eigen::VectorXd all = laplacian_eigenvalues(adjacency);
  k = std::min<int>(k, static_cast<int>(all.size()));
  return all.head(k);
}

EigenSystem laplacian_eigensystem(const Eigen::MatrixXd& adjacency) {
  check_dim(adjacency);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(laplacian(adjacency));
  if (solver.info() != Eigen::Success)
    throw EigenFailure("symmetric eigensolver did not converge");
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

double zero_eigenvalue_tolerance(const Eigen::VectorXd& eigenvalues) {
  const double lmax = eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0;
  return 1e-8 * std::max(1.0, lmax);
}

int zero_eigenvalue_count(const Eigen::VectorXd& eigenvalues) {
  const double tol = zero_eigenvalue_tolerance(eigenvalues);
  int c = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) < tol) ++c;
  return c;
}

}  // namespace mmcp
