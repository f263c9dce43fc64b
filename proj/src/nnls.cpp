#include "archegraph/nnls.hpp"

#include <limits>
#include <vector>

namespace archegraph {

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iters) {
  const auto n = a.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (n == 0) return x;
  if (max_iters <= 0) max_iters = static_cast<int>(3 * n + 30);
  std::vector<char> passive(n, 0);
  const double tol = 1e-12 * (1.0 + a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff()) * n;

  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[j]) idx.push_back(j);
    }
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t q = 0; q < idx.size(); ++q) ap.col(q) = a.col(idx[q]);
    Eigen::VectorXd zp = ap.completeOrthogonalDecomposition().solve(b);
    z.setZero(n);
    for (std::size_t q = 0; q < idx.size(); ++q) z(idx[q]) = zp(q);
  };

  for (int outer = 0; outer < max_iters; ++outer) {
    Eigen::VectorXd w = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > wmax) {
        wmax = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = 1;

    Eigen::VectorXd z;
    for (int inner = 0; inner <= n; ++inner) {
      solve_passive(z);
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) feasible = false;
      }
      if (feasible) break;
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) alpha = std::min(alpha, x(j) / (x(j) - z(j)));
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= 1e-15) {
          passive[j] = 0;
          x(j) = 0.0;
        }
      }
    }
    x = z;
  }
  return x.cwiseMax(0.0);
}

Eigen::VectorXd project_onto_cone(const Eigen::VectorXd& v, const Eigen::MatrixXd& a) {
  if (a.cols() == 0) return v;
  // Moreau: v = P_C(v) + P_polar(v), polar cone generated by -a.
  const Eigen::VectorXd mu = nnls(a, -v);
  return v + a * mu;
}

}  // namespace archegraph
