#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace archegraph::lp {

// minimize c^T x  subject to  A x = b,  x >= 0.
struct Problem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

struct Solution {
  Eigen::VectorXd x;
  Eigen::VectorXd duals;  // y with A^T y <= c at optimum
  double objective = 0.0;
  std::vector<int> basis;
  int pivots = 0;
};

// Dense revised simplex with Bland's rule. Sized for the tiny per-point problems of the
// mixture fit (a handful of rows); refactors the basis every pivot. When a feasible
// starting basis is supplied, phase one is skipped. Throws NumericalError on
// infeasibility, unboundedness or when the pivot budget runs out.
Solution solve(const Problem& p, std::optional<std::vector<int>> feasible_basis = std::nullopt,
               int max_pivots = 1000);

}  // namespace archegraph::lp
