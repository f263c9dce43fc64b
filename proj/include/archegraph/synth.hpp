#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

#include "archegraph/graph.hpp"
#include "archegraph/permutation.hpp"
#include "archegraph/simplex.hpp"

namespace archegraph {

// G(n, p): every pair independently with probability p, pairs visited in (i, j) order.
Graph gen_er(int n, double p, std::uint64_t seed);

struct RmatParams {
  int levels = 3;           // n = 2^levels
  int edge_attempts = -1;   // -1 means 8 n
  double a = 0.55, b = 0.1, c = 0.1, d = 0.25;
};

// Each attempt descends `levels` quadrant choices; directed hits are symmetrized and
// deduplicated, self-loops dropped.
Graph gen_rmat(const RmatParams& params, std::uint64_t seed);

struct StratifiedParams {
  int n = 200;
  double alpha = 0.8;
  double p0 = 0.1;
};

struct StratifiedGraph {
  Graph graph;
  std::vector<int> ages;  // in [1, 10]
};

double stratified_edge_probability(const StratifiedParams& params, int age_gap);

// Ages uniform on 1..10; pair (i, j) linked with probability p0 exp(-alpha |age_i - age_j|).
StratifiedGraph gen_stratified(const StratifiedParams& params, std::uint64_t seed);

struct SimplexCloud {
  Eigen::MatrixXd points;   // n_points x k
  Eigen::MatrixXd weights;  // n_points x (k+1), true mixture of each point
  Simplex true_simplex;
  double sigma_noise = 0.0;
};

// Vertices uniform in [0,10]^k, redrawn until det Q >= 0.1. Weights uniform on the
// probability simplex (normalized unit exponentials); points get N(0, sigma^2) noise per
// coordinate.
SimplexCloud gen_simplex_cloud(int k, int n_points, double sigma_noise, std::uint64_t seed);

using BigCount = boost::multiprecision::cpp_int;

// Unsigned Stirling number of the first kind: permutations of n elements with k cycles.
BigCount stirling_first(int n, int k);

// Uniform over permutations of [n] with exactly k cycles.
Permutation random_permutation_k_cycles(int n, int k, std::uint64_t seed);

// Draws graphs from make(seed') for derived seeds until one is connected.
Graph gen_connected(const std::function<Graph(std::uint64_t)>& make, std::uint64_t seed,
                    int max_retries = 1000);

}  // namespace archegraph
