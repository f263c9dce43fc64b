#include "archegraph/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "archegraph/error.hpp"

namespace archegraph::lp {
namespace {

constexpr double kCostTol = 1e-11;
constexpr double kPivotTol = 1e-11;

// Runs simplex pivots from a primal-feasible basis. Returns false if unbounded.
bool iterate(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
             std::vector<int>& basis, int max_pivots, int& pivots) {
  const auto m = A.rows();
  const auto n = A.cols();
  Eigen::MatrixXd B(m, m);
  Eigen::VectorXd cb(m);
  std::vector<char> in_basis(n, 0);

  for (;;) {
    std::fill(in_basis.begin(), in_basis.end(), 0);
    for (Eigen::Index r = 0; r < m; ++r) {
      B.col(r) = A.col(basis[r]);
      cb(r) = c(basis[r]);
      in_basis[basis[r]] = 1;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Eigen::VectorXd xb = lu.solve(b);
    Eigen::VectorXd y = lu.transpose().solve(cb);

    // Bland: lowest-index improving column
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (in_basis[j]) continue;
      if (c(j) - A.col(j).dot(y) < -kCostTol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return true;
    if (pivots >= max_pivots) throw NumericalError("lp: pivot budget exhausted");

    Eigen::VectorXd w = lu.solve(A.col(entering));
    Eigen::Index leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < m; ++r) {
      if (w(r) <= kPivotTol) continue;
      double ratio = std::max(xb(r), 0.0) / w(r);
      if (ratio < best_ratio - 1e-15 ||
          (ratio <= best_ratio + 1e-15 && leaving >= 0 && basis[r] < basis[leaving])) {
        best_ratio = ratio;
        leaving = r;
      }
    }
    if (leaving < 0) return false;
    basis[leaving] = static_cast<int>(entering);
    ++pivots;
  }
}

}  // namespace

Solution solve(const Problem& p, std::optional<std::vector<int>> feasible_basis, int max_pivots) {
  const auto m = p.A.rows();
  const auto n = p.A.cols();
  if (p.b.size() != m || p.c.size() != n) throw InputError("lp: dimension mismatch");

  Solution sol;
  std::vector<int> basis;

  if (feasible_basis) {
    basis = *feasible_basis;
    if (static_cast<Eigen::Index>(basis.size()) != m) throw InputError("lp: basis size mismatch");
  } else {
    // Phase one on [A | I] with artificials, rows flipped so b >= 0.
    Eigen::MatrixXd A1(m, n + m);
    Eigen::VectorXd b1 = p.b;
    A1.leftCols(n) = p.A;
    A1.rightCols(m).setIdentity();
    for (Eigen::Index r = 0; r < m; ++r) {
      if (b1(r) < 0) {
        b1(r) = -b1(r);
        A1.row(r).head(n) *= -1.0;
      }
    }
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n + m);
    c1.tail(m).setOnes();
    basis.resize(m);
    for (Eigen::Index r = 0; r < m; ++r) basis[r] = static_cast<int>(n + r);
    if (!iterate(A1, b1, c1, basis, max_pivots, sol.pivots)) {
      throw NumericalError("lp: phase one unbounded");
    }
    Eigen::MatrixXd B(m, m);
    for (Eigen::Index r = 0; r < m; ++r) B.col(r) = A1.col(basis[r]);
    Eigen::VectorXd xb = B.partialPivLu().solve(b1);
    double infeas = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (basis[r] >= n) infeas += xb(r);
    }
    if (infeas > 1e-9 * (1.0 + b1.lpNorm<1>())) throw NumericalError("lp: infeasible");
    // Drive degenerate artificials out of the basis where a structural column can replace them.
    for (Eigen::Index r = 0; r < m; ++r) {
      if (basis[r] < n) continue;
      Eigen::MatrixXd Bc(m, m);
      for (Eigen::Index q = 0; q < m; ++q) Bc.col(q) = A1.col(basis[q]);
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(Bc);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::find(basis.begin(), basis.end(), static_cast<int>(j)) != basis.end()) continue;
        Eigen::VectorXd w = lu.solve(A1.col(j));
        if (std::abs(w(r)) > 1e-9) {
          basis[r] = static_cast<int>(j);
          break;
        }
      }
      if (basis[r] >= n) throw NumericalError("lp: redundant equality constraints");
    }
  }

  if (!iterate(p.A, p.b, p.c, basis, max_pivots, sol.pivots)) throw NumericalError("lp: unbounded");

  Eigen::MatrixXd B(m, m);
  Eigen::VectorXd cb(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    B.col(r) = p.A.col(basis[r]);
    cb(r) = p.c(basis[r]);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
  Eigen::VectorXd xb = lu.solve(p.b);
  sol.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r < m; ++r) sol.x(basis[r]) = std::max(xb(r), 0.0);
  sol.duals = lu.transpose().solve(cb);
  sol.objective = p.c.dot(sol.x);
  sol.basis = std::move(basis);
  return sol;
}

}  // namespace archegraph::lp
