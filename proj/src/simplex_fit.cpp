#include "archegraph/simplex_fit.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "archegraph/error.hpp"
#include "archegraph/nnls.hpp"

namespace archegraph {
namespace {

ThetaBatch allocate_batch(Eigen::Index n, int k) {
  ThetaBatch b;
  b.theta.resize(n, k + 1);
  b.raw.resize(n, k + 1);
  b.dual.resize(n, k);
  b.residual.resize(n);
  return b;
}

void solve_one(const Eigen::MatrixXd& points, const Simplex& s, const BarycentricFrame& frame,
               Eigen::Index i, ThetaBatch& b) {
  const Eigen::VectorXd x = points.row(i).transpose();
  b.raw.row(i) = frame(x).transpose();
  const ThetaFit fit = solve_theta_l1(x, s, frame);
  b.theta.row(i) = fit.theta.transpose();
  b.dual.row(i) = fit.dual.transpose();
  b.residual(i) = fit.residual;
}

void check_points(const Eigen::MatrixXd& points, const Simplex& s) {
  if (points.cols() != s.dimension()) {
    throw InputError("points have dimension " + std::to_string(points.cols()) +
                     ", simplex has dimension " + std::to_string(s.dimension()));
  }
}

}  // namespace

ThetaBatch solve_thetas_serial(const Eigen::MatrixXd& points, const Simplex& s) {
  check_points(points, s);
  const BarycentricFrame frame(s);
  ThetaBatch b = allocate_batch(points.rows(), s.dimension());
  for (Eigen::Index i = 0; i < points.rows(); ++i) solve_one(points, s, frame, i, b);
  b.total_residual = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) b.total_residual += b.residual(i);
  return b;
}

ThetaBatch solve_thetas_parallel(const Eigen::MatrixXd& points, const Simplex& s) {
  check_points(points, s);
  const BarycentricFrame frame(s);
  ThetaBatch b = allocate_batch(points.rows(), s.dimension());
  const Eigen::Index n = points.rows();
  // Per-point solves are independent; a throw inside the region would terminate, so errors
  // are captured and rethrown after the join.
  std::optional<std::string> failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < n; ++i) {
    try {
      solve_one(points, s, frame, i, b);
    } catch (const std::exception& e) {
#pragma omp critical(archegraph_theta_failure)
      if (!failure) failure = e.what();
    }
  }
  if (failure) throw NumericalError(*failure);
  b.total_residual = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) b.total_residual += b.residual(i);
  return b;
}

namespace {

struct FitState {
  Simplex simplex;
  ThetaBatch batch;
  double log_volume = 0.0;
  double objective = 0.0;
};

std::optional<FitState> evaluate(const Eigen::MatrixXd& points, double gamma, Simplex s,
                                 Execution exec) {
  FitState st;
  try {
    st.log_volume = log_simplex_volume(s);
    st.batch = exec == Execution::parallel ? solve_thetas_parallel(points, s)
                                           : solve_thetas_serial(points, s);
  } catch (const NumericalError&) {
    return std::nullopt;
  }
  st.objective = st.batch.total_residual + gamma * st.log_volume;
  st.simplex = std::move(s);
  return st;
}

double diameter(const Eigen::MatrixXd& points) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
      best = std::max(best, (points.row(i) - points.row(j)).squaredNorm());
    }
  }
  return std::sqrt(best);
}

// Steepest feasible direction for the linearized objective at st, for steps that move K by
// at most `reach` in Frobenius norm. Such a step changes barycentric weight j of a point by
// at most reach * |grad theta_j| (times |theta|), so every weight within that band of zero
// contributes the constraint "do not decrease it"; uncovered points contribute their
// residual subgradient.
struct Direction {
  Eigen::MatrixXd step;  // k x (k+1)
  double slope = 0.0;    // -<subgradient, step>, the predicted decrease rate
};

Direction descent_direction(const FitState& st, double gamma, double reach,
                            double residual_floor) {
  const int k = st.simplex.dimension();
  const auto n = st.batch.theta.rows();
  Eigen::MatrixXd grad = gamma * log_volume_gradient(st.simplex);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (st.batch.residual(i) > residual_floor) {
      grad.noalias() -= st.batch.dual.row(i).transpose() * st.batch.theta.row(i);
    }
  }

  const BarycentricFrame frame(st.simplex);
  const Eigen::MatrixXd& inv = frame.inverse();
  std::vector<Eigen::VectorXd> cons;
  for (int j = 0; j <= k; ++j) {
    const double rate = inv.row(j).head(k).norm();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = st.batch.raw(i, j);
      if (w > reach * rate * st.batch.raw.row(i).norm()) continue;
      // d theta_j = -inv(j, :k) dK theta
      Eigen::MatrixXd a = -inv.row(j).head(k).transpose() * st.batch.raw.row(i);
      cons.emplace_back(Eigen::Map<Eigen::VectorXd>(a.data(), a.size()));
    }
  }
  // Work in the frame of the current simplex, dK = E dW with E its edge matrix, so the
  // step does not depend on how stretched the simplex is.
  const Eigen::MatrixXd edges = st.simplex.vertices() * Simplex::gamma_incidence(k);
  Eigen::MatrixXd vw = -edges.transpose() * grad;
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(vw.data(), vw.size());
  if (!cons.empty()) {
    Eigen::MatrixXd a(v.size(), static_cast<Eigen::Index>(cons.size()));
    for (std::size_t c = 0; c < cons.size(); ++c) {
      Eigen::Map<const Eigen::MatrixXd> ak(cons[c].data(), k, k + 1);
      Eigen::MatrixXd aw = edges.transpose() * ak;
      a.col(c) = Eigen::Map<Eigen::VectorXd>(aw.data(), aw.size());
    }
    v = project_onto_cone(v, a);
  }
  Direction d;
  d.step = edges * Eigen::Map<Eigen::MatrixXd>(v.data(), k, k + 1);
  d.slope = -(grad.array() * d.step.array()).sum();
  return d;
}

}  // namespace

SimplexFit fit_min_volume_simplex(const Eigen::MatrixXd& points, double gamma,
                                  const FitOptions& opts, Execution exec) {
  return fit_min_volume_simplex(points, gamma, init_enclosing_simplex(points), opts, exec);
}

SimplexFit fit_min_volume_simplex(const Eigen::MatrixXd& points, double gamma,
                                  const Simplex& start, const FitOptions& opts, Execution exec) {
  if (gamma < 0.0) throw InputError("gamma must be nonnegative");
  if (opts.max_iters < 0) throw InputError("max_iters must be nonnegative");
  check_points(points, start);

  auto first = evaluate(points, gamma, start, exec);
  if (!first) throw NumericalError("starting simplex is degenerate");
  FitState st = std::move(*first);

  const double diam = std::max(diameter(points), 1e-300);
  const double max_step = opts.step_fraction * diam;
  const double residual_floor = 1e-12 * diam;
  const double min_step = 1e-12 * diam;
  constexpr std::size_t kStopWindow = 10;

  FitReport report;
  report.objective_trace.push_back(st.objective);
  double step = max_step;

  for (int it = 0; it < opts.max_iters; ++it) {
    const Direction d = descent_direction(st, gamma, step, residual_floor);
    const Eigen::MatrixXd& dir = d.step;
    const double dir_norm = dir.norm();

    std::optional<FitState> next;
    double t = 0.0;
    if (dir_norm > 0.0 && d.slope > 1e-14 * dir_norm * (1.0 + std::abs(st.objective))) {
      t = step / dir_norm;
      for (int h = 0; h <= opts.max_halvings; ++h, t *= 0.5) {
        auto cand = evaluate(points, gamma, Simplex(st.simplex.vertices() + t * dir), exec);
        if (cand && cand->objective <= st.objective - opts.armijo * t * d.slope) {
          next = std::move(cand);
          break;
        }
      }
    }
    if (!next) {
      // Stationary at this reach, or the step crossed points outside the band: retry shorter.
      step *= 0.25;
      if (step < min_step) {
        report.converged = true;
        break;
      }
      continue;
    }

    st = std::move(*next);
    report.objective_trace.push_back(st.objective);
    ++report.iterations;
    step = std::min(2.0 * t * dir_norm, max_step);

    // Relative change per iteration, averaged over a short window.
    const auto& tr = report.objective_trace;
    const std::size_t w = std::min<std::size_t>(kStopWindow, tr.size() - 1);
    if (tr.size() > kStopWindow) {
      const double scale = std::max({std::abs(tr[tr.size() - 1 - w]), std::abs(tr.back()), 1e-300});
      if ((tr[tr.size() - 1 - w] - tr.back()) / static_cast<double>(w) < opts.tol * scale) {
        report.converged = true;
        break;
      }
    }
  }

  report.residual_l1 = st.batch.total_residual;
  report.log_volume = st.log_volume;
  return {std::move(st.simplex), MixtureTable{std::move(st.batch.theta)}, std::move(report)};
}

}  // namespace archegraph
