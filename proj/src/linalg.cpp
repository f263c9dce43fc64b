#include "archegraph/linalg.hpp"

#include <cmath>

namespace archegraph {

Eigen::MatrixXd ones_complement_basis(Eigen::Index n) {
  // H = I - 2 w w^T with w = (e_1 - u) / |e_1 - u|, u = 1/sqrt(n); H e_1 = u.
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, -1.0 / std::sqrt(static_cast<double>(n)));
  w(0) += 1.0;
  const double norm = w.norm();
  if (norm == 0.0) return Eigen::MatrixXd(n, 0);  // n == 1
  w /= norm;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - 2.0 * w * w.transpose();
  return h.rightCols(n - 1);
}

}  // namespace archegraph
