#pragma once

#include <Eigen/Dense>

#include "mmcp/graph.hpp"

namespace mmcp {

// Dense symmetric eigendecomposition is intended for desk-scale graphs; the
// backend refuses anything larger than this.
inline constexpr int kMaxEigenDim = 2048;

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k pairs with values[k], orthonormal
};

// 0/1 adjacency of the graph structure (weights ignored).
Eigen::MatrixXd structure_adjacency(const Graph& g);

// Weighted adjacency.
Eigen::MatrixXd weighted_adjacency(const Graph& g);

// Combinatorial Laplacian L = diag(row sums) - A for a symmetric nonnegative
// adjacency with zero diagonal.
Eigen::MatrixXd laplacian(const Eigen::MatrixXd& adjacency);

// Ascending Laplacian eigenvalues of the given adjacency. Throws
// UnsupportedScale for dimensions above kMaxEigenDim and EigenFailure if the
// backend does not converge.
Eigen::VectorXd laplacian_eigenvalues(const Eigen::MatrixXd& adjacency);

// First k ascending eigenvalues (k <= n).
Eigen::VectorXd laplacian_eigenvalues(const Eigen::MatrixXd& adjacency, int k);

// Full eigensystem (values + orthonormal eigenvectors).
EigenSystem laplacian_eigensystem(const Eigen::MatrixXd& adjacency);

// Tolerance under which a Laplacian eigenvalue counts as zero:
// 1e-8 * max(1, largest eigenvalue).
double zero_eigenvalue_tolerance(const Eigen::VectorXd& eigenvalues);

// Number of eigenvalues below the zero tolerance. For an exact graph
// Laplacian this equals the number of connected components.
int zero_eigenvalue_count(const Eigen::VectorXd& eigenvalues);

}  // namespace mmcp
