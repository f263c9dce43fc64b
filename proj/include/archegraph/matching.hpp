#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "archegraph/execution.hpp"
#include "archegraph/graph.hpp"
#include "archegraph/permutation.hpp"

namespace archegraph {

// f(sigma) = kappa(L_G, L_{H^(sigma)}), the objective of every alignment search.
double alignment_kappa(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                       const Permutation& sigma);

// Objective values already computed for a pair of Laplacians, keyed by permutation.
using KappaCache = std::map<Permutation, double>;

struct TranspositionStep {
  Permutation sigma;
  std::pair<int, int> swapped{0, 0};
  double kappa = 0.0;
  double improvement = 0.0;  // kappa(current) - kappa(sigma)
};

// Scans all C(n,2) transpositions of sigma in (i, j) lexicographic order and returns the one
// with the smallest kappa; ties keep the earliest pair. Both variants return identical results.
TranspositionStep best_transposition_serial(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                                            const Permutation& sigma, KappaCache* cache = nullptr);
TranspositionStep best_transposition_parallel(const Eigen::MatrixXd& lg,
                                              const Eigen::MatrixXd& lh, const Permutation& sigma,
                                              KappaCache* cache = nullptr);
TranspositionStep best_transposition(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                                     const Permutation& sigma,
                                     Execution exec = Execution::parallel);

enum class StopReason { tolerance, max_iters, kappa_one };
std::string to_string(StopReason r);

struct TraceEntry {
  double kappa = 0.0;
  std::pair<int, int> swapped{-1, -1};  // (-1, -1) for the starting point
};

struct MatchResult {
  Permutation sigma;
  double kappa = 0.0;
  double initial_kappa = 0.0;
  int iterations = 0;  // accepted transpositions
  int sweeps = 0;      // neighborhood scans performed
  std::vector<TraceEntry> trace;
  StopReason stopped_by = StopReason::max_iters;
};

struct DescentOptions {
  int max_iters = 200;     // q
  double tolerance = 0.0;  // epsilon
};

// Greedy descent over single transpositions from sigma0 (identity when empty).
MatchResult cond_sim_grad_descent(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                                  const DescentOptions& opts = {}, Permutation sigma0 = {},
                                  Execution exec = Execution::parallel);

struct ChainSample {
  Permutation sigma;
  double f_value = 0.0;
  int step_index = 0;
  bool accepted = false;
};

// Metropolis chain on S_n with uniform transposition proposals; an uphill move from f to
// f' is accepted with probability lambda^(f - f'). Records the state after every step.
std::vector<ChainSample> metropolis_chain(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                                          double lambda, int steps, std::uint64_t seed,
                                          Permutation sigma0 = {});

struct BruteForceResult {
  Permutation sigma;  // lexicographically smallest minimizer
  double kappa = 0.0;
  std::size_t minimizer_count = 0;  // permutations within 1e-6 of the minimum
};

inline constexpr int kBruteForceMaxN = 9;

// Exhaustive scan of S_n, n <= 9.
BruteForceResult brute_force_min_kappa(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                                       Execution exec = Execution::parallel);

// Alignment file: one "i j" per line meaning vertex j of H is matched to vertex i of G,
// i.e. sigma(j) = i. Tokens are resolved through the graphs' labels. Unassigned H vertices
// take the unused G vertices in increasing order.
Permutation parse_alignment(std::istream& in, const Graph& g, const Graph& h);
Permutation parse_alignment_file(const std::string& path, const Graph& g, const Graph& h);

}  // namespace archegraph
