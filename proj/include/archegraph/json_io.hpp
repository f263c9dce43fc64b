#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "archegraph/matching.hpp"
#include "archegraph/pencil.hpp"
#include "archegraph/simplex_fit.hpp"
#include "archegraph/spectral.hpp"

namespace archegraph {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// Reproducibility header: tool name, version, command, parameters, seed and a UTC timestamp.
// The timestamp is the only field that varies between identical runs.
Json run_header(const std::string& command, const Json& params);

Json matrix_to_json(const Eigen::MatrixXd& m);  // row-major nested arrays
Eigen::MatrixXd matrix_from_json(const Json& j);

Json to_json(const Graph& g);
Json to_json(const Embedding& e);
Json to_json(const KappaResult& k);
Json to_json(const MatchResult& m);
Json to_json(const Permutation& p);

// Fit dump: K (k x (k+1), one column per vertex), the report, and theta with the vertex
// labels; loadable by mixture_from_fit_json for queries.
Json fit_to_json(const SimplexFit& fit, const std::vector<std::string>& labels, double gamma);

struct LabeledMixture {
  MixtureTable table;
  std::vector<std::string> labels;
};
LabeledMixture mixture_from_fit_json(const Json& j);

}  // namespace archegraph
