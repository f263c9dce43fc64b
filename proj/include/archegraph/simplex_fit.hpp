#pragma once

#include <vector>

#include <Eigen/Dense>

#include "archegraph/execution.hpp"
#include "archegraph/simplex.hpp"

namespace archegraph {

// Row i holds theta_i, the convex weights of point i over the simplex vertices.
struct MixtureTable {
  Eigen::MatrixXd theta;  // n x (k+1)

  Eigen::Index size() const { return theta.rows(); }
};

struct FitOptions {
  int max_iters = 500;
  double tol = 1e-6;             // stop on relative objective change below this
  double step_fraction = 0.1;    // first trial displacement as a fraction of the data diameter
  double armijo = 1e-4;
  int max_halvings = 40;
};

struct FitReport {
  std::vector<double> objective_trace;  // entry 0 is the initial simplex
  double residual_l1 = 0.0;
  double log_volume = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SimplexFit {
  Simplex simplex;
  MixtureTable mixture;
  FitReport report;
};

// Per-point theta solves against one simplex. The serial and OpenMP variants return
// bitwise-identical results; total_residual is summed in index order after the solves.
struct ThetaBatch {
  Eigen::MatrixXd theta;       // n x (k+1), projected onto the probability simplex
  Eigen::MatrixXd raw;         // n x (k+1) unconstrained barycentric weights
  Eigen::MatrixXd dual;        // n x k, zero rows for enclosed points
  Eigen::VectorXd residual;    // n
  double total_residual = 0.0;
};

ThetaBatch solve_thetas_serial(const Eigen::MatrixXd& points, const Simplex& s);
ThetaBatch solve_thetas_parallel(const Eigen::MatrixXd& points, const Simplex& s);

// Minimizes sum_i |x_i - K theta_i|_1 + gamma log vol(K) over simplexes K and convex theta_i.
// Alternates exact theta solves with one backtracking step on K per iteration. The step
// direction is the subgradient (-dual_i theta_i^T from each uncovered point, plus
// gamma * d log vol / dK) projected so points on the boundary are not crossed to first
// order; candidate steps are scored on the objective with theta re-solved.
SimplexFit fit_min_volume_simplex(const Eigen::MatrixXd& points, double gamma,
                                  const FitOptions& opts = {},
                                  Execution exec = Execution::parallel);

// Same, starting from a caller-supplied enclosing simplex.
SimplexFit fit_min_volume_simplex(const Eigen::MatrixXd& points, double gamma,
                                  const Simplex& start, const FitOptions& opts = {},
                                  Execution exec = Execution::parallel);

}  // namespace archegraph
