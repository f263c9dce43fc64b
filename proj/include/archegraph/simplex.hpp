#pragma once

#include <Eigen/Dense>

namespace archegraph {

// A k-simplex in R^k held as the k x (k+1) vertex matrix K = [v_0 | ... | v_k].
class Simplex {
 public:
  Simplex() = default;
  explicit Simplex(Eigen::MatrixXd vertices);  // requires cols == rows + 1, rows >= 1

  int dimension() const noexcept { return static_cast<int>(k_.rows()); }
  const Eigen::MatrixXd& vertices() const noexcept { return k_; }
  Eigen::VectorXd vertex(int j) const { return k_.col(j); }

  // (k+1) x k incidence matrix: first row -1, identity below, so K * Gamma = [v_1-v_0 | ...].
  static Eigen::MatrixXd gamma_incidence(int k);
  // Q = Gamma^T K^T K Gamma, the Gram matrix of the edge vectors.
  Eigen::MatrixXd edge_gram() const;

 private:
  Eigen::MatrixXd k_;
};

// vol(K) = c_k sqrt(det Q) with c_k = 1/k!. Throws NumericalError when
// det Q <= 1e-14 (trace Q / k)^k.
double simplex_volume(const Simplex& s);
double log_simplex_volume(const Simplex& s);

// d log vol / dK = K Gamma Q^{-1} Gamma^T, laid out like K.
Eigen::MatrixXd log_volume_gradient(const Simplex& s);

// Unique affine weights with K theta = x and sum(theta) = 1; negative entries mean x lies
// outside the simplex.
Eigen::VectorXd barycentric(const Eigen::VectorXd& x, const Simplex& s);

// Precomputed inverse of [K; 1^T] for repeated barycentric solves against one simplex.
class BarycentricFrame {
 public:
  explicit BarycentricFrame(const Simplex& s);
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
  // Row j maps [x; 1] to theta_j.
  const Eigen::MatrixXd& inverse() const noexcept { return inv_; }

 private:
  Eigen::MatrixXd inv_;
};

struct ThetaFit {
  Eigen::VectorXd theta;    // on the probability simplex
  double residual = 0.0;    // |x - K theta|_1
  Eigen::VectorXd dual;     // length k; -dual * theta^T is a subgradient of the residual in K
  bool enclosed = false;    // fast path taken: x inside, residual exactly zero
};

// theta minimizing |x - K theta|_1 over the probability simplex. Interior points return their
// barycentric weights; others go through a small linear program over (theta, r+, r-).
ThetaFit solve_theta_l1(const Eigen::VectorXd& x, const Simplex& s);
ThetaFit solve_theta_l1(const Eigen::VectorXd& x, const Simplex& s, const BarycentricFrame& frame);

// Regular k-simplex centered at the mean of the rows of X whose inscribed ball has radius
// 1.1 times the largest distance from the mean, so every point is enclosed. k = X.cols().
// Throws InputError when the cloud does not span R^k.
Simplex init_enclosing_simplex(const Eigen::MatrixXd& points);

}  // namespace archegraph
