#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "archegraph/graph.hpp"

namespace archegraph {

enum class KappaMethod { exact_projected, shifted };

struct KappaResult {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 0.0;
  KappaMethod method = KappaMethod::exact_projected;
  double epsilon = 0.0;  // shift used by the shifted method, 0 otherwise
};

std::string to_string(KappaMethod m);

// Nontrivial eigenvalues (ascending, length n-1) of L_G x = lambda L_H x restricted to the
// complement of the all-ones vector. Throws InputError on size mismatch or when either
// matrix is singular there (a disconnected graph).
Eigen::VectorXd generalized_eigenvalues(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh);
Eigen::VectorXd generalized_eigenvalues(const LaplacianMatrix& lg, const LaplacianMatrix& lh);

// Same pencil, also returning the eigenvectors in R^n (columns orthogonal to 1).
struct PencilDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
PencilDecomposition generalized_eigen(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh);

KappaResult kappa(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh);
KappaResult kappa(const LaplacianMatrix& lg, const LaplacianMatrix& lh);

// Condition number of the full pencil after L' = L + eps 11^T / n, with the eigenvalue whose
// eigenvector lies along 1 removed.
KappaResult kappa_shifted(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh, double eps = 0.01);
KappaResult kappa_shifted(const LaplacianMatrix& lg, const LaplacianMatrix& lh, double eps = 0.01);

// Checks lambda_min x^T L_H x <= x^T L_G x <= lambda_max x^T L_H x for `trials` random unit
// vectors orthogonal to 1, with 1e-9 slack.
bool rayleigh_bounds_check(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh, int trials,
                           std::uint64_t seed = 0);

}  // namespace archegraph
