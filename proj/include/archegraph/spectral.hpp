#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "archegraph/graph.hpp"

namespace archegraph {

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, same order as values
};

// Full decomposition of a symmetric matrix. Throws InputError if M deviates from
// symmetry by more than 1e-10 (absolute, entrywise).
EigenDecomposition sym_eig(const Eigen::MatrixXd& m);

// Spectral coordinates of a graph: row v is vertex v's position in R^k.
struct Embedding {
  Eigen::MatrixXd coords;  // n x k
  Eigen::VectorXd eigenvalues;  // the k kept eigenvalues, ascending
  std::vector<std::string> vertices;

  Eigen::Index dimension() const { return coords.cols(); }
};

// Rows of the k eigenvectors of the normalized Laplacian that follow the trivial one
// (eigenvalue 0, direction D^{1/2} 1). Raw unit eigenvectors, each column flipped so its
// largest-magnitude entry is positive. Requires a connected graph and 1 <= k <= n - 2.
Embedding embed(const Graph& g, int k);

// Flips each column so its entry of largest magnitude is positive (first such entry on ties).
void canonicalize_signs(Eigen::MatrixXd& columns);

}  // namespace archegraph
