#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "archegraph/json_io.hpp"
#include "archegraph/simplex.hpp"

namespace archegraph {

struct ExperimentReport {
  std::string name;
  bool passed = false;
  std::string summary;  // one line with the measured numbers
  Json details;         // structured results
  std::string table;    // plot-ready CSV
};

// Sum of vertex distances under the best vertex correspondence (exhaustive over (k+1)!).
double simplex_vertex_error(const Simplex& fitted, const Simplex& truth);

struct Fig3Params {
  std::vector<int> ks{2, 3, 4, 5};
  int seeds = 5;
  int points = 1000;
  double sigma = 0.01;
  double gamma = 10.0;
  int max_iters = 3000;
  double threshold = 0.25;
  std::uint64_t seed = 1;
};
ExperimentReport run_fig3(const Fig3Params& p);

struct Fig4Params {
  int n = 200;
  double alpha = 0.8;
  double p0 = 0.1;
  int k = 2;
  double gamma = 1.0;
  int seeds = 5;
  int far_gap = 3;
  std::uint64_t seed = 1;
};
ExperimentReport run_fig4(const Fig4Params& p);

struct Table2Params {
  std::string type = "er";  // er | rmat
  int n = 8;
  double p = 0.5;
  int batches = 3;
  int q = 200;
  double epsilon = 0.0;
  int min_successes = 4;
  int required_batches = 2;
  std::uint64_t seed = 1;
};
ExperimentReport run_table2(const Table2Params& p);

struct ShiftParams {
  int pairs = 20;
  int max_n = 100;
  double epsilon = 0.01;
  double tolerance = 1e-3;
  std::optional<std::string> football_path;  // optional extra permuted pair
  std::uint64_t seed = 1;
};
ExperimentReport run_shift_accuracy(const ShiftParams& p);

// The Laplacian-cospectral, non-isomorphic pair on 6 vertices and 7 edges used for the
// cospectral experiment.
std::pair<Graph, Graph> cospectral_pair();
ExperimentReport run_cospectral(double expected = 6.1852, double tolerance = 0.01);

}  // namespace archegraph
