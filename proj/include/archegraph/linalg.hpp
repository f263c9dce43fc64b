#pragma once

#include <Eigen/Dense>

namespace archegraph {

// n x (n-1) orthonormal basis of the complement of the all-ones vector: columns 2..n of the
// Householder reflection that maps e_1 to 1/sqrt(n).
Eigen::MatrixXd ones_complement_basis(Eigen::Index n);

}  // namespace archegraph
