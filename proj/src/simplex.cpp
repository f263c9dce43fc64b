#include "archegraph/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "archegraph/error.hpp"
#include "archegraph/linalg.hpp"
#include "archegraph/lp.hpp"

namespace archegraph {

Simplex::Simplex(Eigen::MatrixXd vertices) : k_(std::move(vertices)) {
  if (k_.rows() < 1 || k_.cols() != k_.rows() + 1) {
    throw InputError("simplex vertex matrix must be k x (k+1), got " + std::to_string(k_.rows()) +
                     " x " + std::to_string(k_.cols()));
  }
}

Eigen::MatrixXd Simplex::gamma_incidence(int k) {
  Eigen::MatrixXd g(k + 1, k);
  g.row(0).setConstant(-1.0);
  g.bottomRows(k).setIdentity();
  return g;
}

Eigen::MatrixXd Simplex::edge_gram() const {
  const Eigen::MatrixXd edges = k_ * gamma_incidence(dimension());
  return edges.transpose() * edges;
}

namespace {

// log det Q via Cholesky, after the degeneracy gate.
double checked_log_det_gram(const Simplex& s) {
  const int k = s.dimension();
  const Eigen::MatrixXd q = s.edge_gram();
  const double mean_diag = q.trace() / k;
  Eigen::LLT<Eigen::MatrixXd> llt(q);
  if (!(mean_diag > 0.0) || llt.info() != Eigen::Success) {
    throw NumericalError("degenerate simplex");
  }
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  if (!(log_det > std::log(1e-14) + k * std::log(mean_diag))) {
    throw NumericalError("degenerate simplex");
  }
  return log_det;
}

}  // namespace

double log_simplex_volume(const Simplex& s) {
  const int k = s.dimension();
  return -std::lgamma(k + 1.0) + 0.5 * checked_log_det_gram(s);
}

double simplex_volume(const Simplex& s) { return std::exp(log_simplex_volume(s)); }

Eigen::MatrixXd log_volume_gradient(const Simplex& s) {
  checked_log_det_gram(s);
  const int k = s.dimension();
  const Eigen::MatrixXd gamma = Simplex::gamma_incidence(k);
  const Eigen::MatrixXd q_inv = s.edge_gram().llt().solve(Eigen::MatrixXd::Identity(k, k));
  return s.vertices() * gamma * q_inv * gamma.transpose();
}

BarycentricFrame::BarycentricFrame(const Simplex& s) {
  checked_log_det_gram(s);
  const int k = s.dimension();
  Eigen::MatrixXd a(k + 1, k + 1);
  a.topRows(k) = s.vertices();
  a.row(k).setOnes();
  inv_ = a.partialPivLu().inverse();
}

Eigen::VectorXd BarycentricFrame::operator()(const Eigen::VectorXd& x) const {
  const auto k = inv_.rows() - 1;
  if (x.size() != k) throw InputError("point dimension does not match simplex");
  return inv_.leftCols(k) * x + inv_.col(k);
}

Eigen::VectorXd barycentric(const Eigen::VectorXd& x, const Simplex& s) {
  return BarycentricFrame(s)(x);
}

ThetaFit solve_theta_l1(const Eigen::VectorXd& x, const Simplex& s) {
  return solve_theta_l1(x, s, BarycentricFrame(s));
}

ThetaFit solve_theta_l1(const Eigen::VectorXd& x, const Simplex& s, const BarycentricFrame& frame) {
  const int k = s.dimension();
  ThetaFit out;
  Eigen::VectorXd bary = frame(x);
  if (bary.minCoeff() >= 0.0) {
    out.theta = bary;
    out.residual = 0.0;
    out.dual = Eigen::VectorXd::Zero(k);
    out.enclosed = true;
    return out;
  }

  // Variables [theta (k+1) | r+ (k) | r- (k)]; rows: K theta + r+ - r- = x, 1^T theta = 1.
  const Eigen::MatrixXd& kv = s.vertices();
  lp::Problem p;
  p.A = Eigen::MatrixXd::Zero(k + 1, 3 * k + 1);
  p.A.topLeftCorner(k, k + 1) = kv;
  p.A.block(0, k + 1, k, k).setIdentity();
  p.A.block(0, 2 * k + 1, k, k) = -Eigen::MatrixXd::Identity(k, k);
  p.A.row(k).head(k + 1).setOnes();
  p.b.resize(k + 1);
  p.b.head(k) = x;
  p.b(k) = 1.0;
  p.c = Eigen::VectorXd::Zero(3 * k + 1);
  p.c.tail(2 * k).setOnes();

  // Start at the L1-nearest vertex with the residual split by sign.
  int nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= k; ++j) {
    double d = (x - kv.col(j)).lpNorm<1>();
    if (d < best) {
      best = d;
      nearest = j;
    }
  }
  std::vector<int> basis(k + 1);
  for (int c = 0; c < k; ++c) {
    basis[c] = x(c) - kv(c, nearest) >= 0.0 ? k + 1 + c : 2 * k + 1 + c;
  }
  basis[k] = nearest;

  const auto sol = lp::solve(p, basis);
  out.theta = sol.x.head(k + 1);
  const double total = out.theta.sum();
  if (total > 0.0) out.theta /= total;
  out.residual = (x - kv * out.theta).lpNorm<1>();
  out.dual = sol.duals.head(k);
  out.enclosed = false;
  return out;
}

Simplex init_enclosing_simplex(const Eigen::MatrixXd& points) {
  const auto k = points.cols();
  const auto n = points.rows();
  if (k < 1) throw InputError("point cloud has dimension 0");
  if (n < k + 1) {
    throw InputError("need at least k+1 = " + std::to_string(k + 1) + " points, got " +
                     std::to_string(n) + "; try a smaller k");
  }
  const Eigen::RowVectorXd mean = points.colwise().mean();
  const Eigen::MatrixXd centered = points.rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const double top = eig.eigenvalues().maxCoeff();
  if (!(top > 0.0) || eig.eigenvalues().minCoeff() <= 1e-12 * top) {
    throw InputError("point cloud is rank deficient in R^" + std::to_string(k) +
                     "; try a smaller k");
  }
  const double radius = centered.rowwise().norm().maxCoeff();

  // Rows of the complement basis are the vertices of a regular simplex with circumradius
  // sqrt(k/(k+1)); a regular k-simplex has circumradius k times its inradius.
  const Eigen::MatrixXd unit = ones_complement_basis(k + 1);
  const double unit_circumradius = std::sqrt(static_cast<double>(k) / static_cast<double>(k + 1));
  const double circumradius = static_cast<double>(k) * 1.1 * radius;
  Eigen::MatrixXd kv =
      (unit * (circumradius / unit_circumradius)).transpose().colwise() + mean.transpose();
  return Simplex(std::move(kv));
}

}  // namespace archegraph
