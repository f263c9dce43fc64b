#include "archegraph/json_io.hpp"

#include <chrono>
#include <ctime>

#include "archegraph/error.hpp"

namespace archegraph {

Json run_header(const std::string& command, const Json& params) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  Json h;
  h["tool"] = "archegraph";
  h["version"] = kVersion;
  h["command"] = command;
  h["params"] = params;
  h["seed"] = params.contains("seed") ? params["seed"] : Json(nullptr);
  h["timestamp"] = stamp;
  return h;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a matrix as an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw InputError("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

Json to_json(const Embedding& e) {
  Json j;
  j["k"] = e.dimension();
  j["eigenvalues"] = std::vector<double>(e.eigenvalues.data(), e.eigenvalues.data() + e.eigenvalues.size());
  j["vertices"] = e.vertices;
  j["coords"] = matrix_to_json(e.coords);
  return j;
}

Json to_json(const KappaResult& k) {
  Json j;
  j["lambda_min"] = k.lambda_min;
  j["lambda_max"] = k.lambda_max;
  j["kappa"] = k.kappa;
  j["method"] = to_string(k.method);
  if (k.method == KappaMethod::shifted) j["epsilon"] = k.epsilon;
  return j;
}

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  Json j;
  j["n"] = g.num_vertices();
  j["edges"] = std::move(edges);
  j["labels"] = g.labels();
  return j;
}

Json to_json(const Permutation& p) { return std::vector<int>(p.map().begin(), p.map().end()); }

Json to_json(const MatchResult& m) {
  Json j;
  j["sigma"] = to_json(m.sigma);
  j["kappa"] = m.kappa;
  j["initial_kappa"] = m.initial_kappa;
  j["iterations"] = m.iterations;
  j["sweeps"] = m.sweeps;
  j["stopped_by"] = to_string(m.stopped_by);
  Json trace = Json::array();
  for (const auto& t : m.trace) {
    Json e;
    e["kappa"] = t.kappa;
    if (t.swapped.first >= 0) {
      e["transposition"] = {t.swapped.first, t.swapped.second};
    } else {
      e["transposition"] = nullptr;
    }
    trace.push_back(std::move(e));
  }
  j["trace"] = std::move(trace);
  return j;
}

Json fit_to_json(const SimplexFit& fit, const std::vector<std::string>& labels, double gamma) {
  Json j;
  j["k"] = fit.simplex.dimension();
  j["gamma"] = gamma;
  j["K"] = matrix_to_json(fit.simplex.vertices());
  j["residual_l1"] = fit.report.residual_l1;
  j["log_volume"] = fit.report.log_volume;
  j["objective"] = fit.report.objective_trace.back();
  j["iterations"] = fit.report.iterations;
  j["converged"] = fit.report.converged;
  j["objective_trace"] = fit.report.objective_trace;
  j["vertices"] = labels;
  j["theta"] = matrix_to_json(fit.mixture.theta);
  return j;
}

LabeledMixture mixture_from_fit_json(const Json& j) {
  if (!j.contains("theta")) throw InputError("fit file has no theta table");
  LabeledMixture out;
  out.table.theta = matrix_from_json(j["theta"]);
  if (j.contains("vertices")) out.labels = j["vertices"].get<std::vector<std::string>>();
  if (!out.labels.empty() && static_cast<Eigen::Index>(out.labels.size()) != out.table.size()) {
    throw InputError("fit file: label count does not match mixture rows");
  }
  return out;
}

}  // namespace archegraph
