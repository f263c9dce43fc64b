#pragma once

#include <Eigen/Dense>

namespace archegraph {

// Lawson-Hanson active set: argmin_{x >= 0} |A x - b|_2.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iters = 0);

// Euclidean projection of v onto the polyhedral cone {d : columns(a)^T d >= 0}.
Eigen::VectorXd project_onto_cone(const Eigen::VectorXd& v, const Eigen::MatrixXd& a);

}  // namespace archegraph
