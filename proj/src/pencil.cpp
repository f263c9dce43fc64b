#include "archegraph/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "archegraph/error.hpp"
#include "archegraph/linalg.hpp"
#include "archegraph/rng.hpp"
#include "archegraph/spectral.hpp"

namespace archegraph {
namespace {

void check_pair(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh) {
  if (lg.rows() != lg.cols() || lh.rows() != lh.cols()) throw InputError("Laplacians must be square");
  if (lg.rows() != lh.rows()) {
    throw InputError("graphs differ in order: " + std::to_string(lg.rows()) + " vs " +
                     std::to_string(lh.rows()));
  }
  if (lg.rows() < 2) throw InputError("pencil needs at least 2 vertices");
}

// Upper Cholesky factor of a symmetric matrix, failing when a pivot drops below
// 1e-12 * trace.
Eigen::MatrixXd checked_cholesky(const Eigen::MatrixXd& b, const char* which) {
  const Eigen::Index m = b.rows();
  const double floor = 1e-12 * std::max(b.trace(), 0.0);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    double d = b(j, j) - r.col(j).head(j).squaredNorm();
    if (!(d > floor) || d <= 0.0) {
      throw InputError(std::string(which) +
                       " Laplacian is singular on the complement of 1 (graph is disconnected)");
    }
    d = std::sqrt(d);
    r(j, j) = d;
    for (Eigen::Index c = j + 1; c < m; ++c) {
      r(j, c) = (b(j, c) - r.col(j).head(j).dot(r.col(c).head(j))) / d;
    }
  }
  return r;
}

KappaResult from_values(const Eigen::VectorXd& v, KappaMethod method, double eps) {
  KappaResult r;
  r.lambda_min = v.minCoeff();
  r.lambda_max = v.maxCoeff();
  r.kappa = r.lambda_max / r.lambda_min;
  r.method = method;
  r.epsilon = eps;
  return r;
}

}  // namespace

std::string to_string(KappaMethod m) {
  return m == KappaMethod::exact_projected ? "exact_projected" : "shifted";
}

PencilDecomposition generalized_eigen(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh) {
  check_pair(lg, lh);
  const Eigen::MatrixXd u = ones_complement_basis(lg.rows());
  const Eigen::MatrixXd a = u.transpose() * lg * u;
  const Eigen::MatrixXd b = u.transpose() * lh * u;
  checked_cholesky(a, "first");
  const Eigen::MatrixXd r = checked_cholesky(b, "second");
  const auto tri = r.triangularView<Eigen::Upper>();
  // C = R^{-T} A R^{-1}
  Eigen::MatrixXd c = tri.transpose().solve(a);
  c = tri.transpose().solve(c.transpose()).transpose();
  c = 0.5 * (c + c.transpose());
  const EigenDecomposition e = sym_eig(c);
  PencilDecomposition out;
  out.values = e.values;
  out.vectors = u * tri.solve(e.vectors);
  return out;
}

Eigen::VectorXd generalized_eigenvalues(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh) {
  return generalized_eigen(lg, lh).values;
}

Eigen::VectorXd generalized_eigenvalues(const LaplacianMatrix& lg, const LaplacianMatrix& lh) {
  return generalized_eigenvalues(lg.entries, lh.entries);
}

KappaResult kappa(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh) {
  return from_values(generalized_eigenvalues(lg, lh), KappaMethod::exact_projected, 0.0);
}

KappaResult kappa(const LaplacianMatrix& lg, const LaplacianMatrix& lh) {
  return kappa(lg.entries, lh.entries);
}

KappaResult kappa_shifted(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh, double eps) {
  check_pair(lg, lh);
  if (!(eps > 0.0)) throw InputError("shift epsilon must be positive");
  const Eigen::Index n = lg.rows();
  const Eigen::MatrixXd shift = Eigen::MatrixXd::Constant(n, n, eps / static_cast<double>(n));
  const Eigen::MatrixXd a = lg + shift;
  const Eigen::MatrixXd b = lh + shift;
  const Eigen::LLT<Eigen::MatrixXd> llt(b);
  if (llt.info() != Eigen::Success) throw InputError("shifted Laplacian is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  const auto tri = l.triangularView<Eigen::Lower>();
  Eigen::MatrixXd c = tri.solve(a);
  c = tri.solve(c.transpose()).transpose();
  c = 0.5 * (c + c.transpose());
  const EigenDecomposition e = sym_eig(c);
  // Back-transform eigenvectors, x = L^{-T} y, and drop the one along 1.
  const Eigen::MatrixXd x = tri.transpose().solve(e.vectors);
  const Eigen::VectorXd one = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::Index drop = -1;
  double best = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double align = std::abs(one.dot(x.col(j))) / x.col(j).norm();
    if (align > best) {
      best = align;
      drop = j;
    }
  }
  if (best <= 0.99) throw NumericalError("no shifted eigenvector aligned with 1");
  Eigen::VectorXd kept(n - 1);
  for (Eigen::Index j = 0, q = 0; j < n; ++j) {
    if (j != drop) kept(q++) = e.values(j);
  }
  return from_values(kept, KappaMethod::shifted, eps);
}

KappaResult kappa_shifted(const LaplacianMatrix& lg, const LaplacianMatrix& lh, double eps) {
  return kappa_shifted(lg.entries, lh.entries, eps);
}

bool rayleigh_bounds_check(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh, int trials,
                           std::uint64_t seed) {
  const KappaResult k = kappa(lg, lh);
  const Eigen::Index n = lg.rows();
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  bool ok = true;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = normal(rng);
    x.array() -= x.mean();
    x.normalize();
    const double ga = x.dot(lg * x);
    const double hb = x.dot(lh * x);
    if (k.lambda_min * hb > ga + 1e-9 || ga > k.lambda_max * hb + 1e-9) ok = false;
  }
  return ok;
}

}  // namespace archegraph
