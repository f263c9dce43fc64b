#include "archegraph/matching.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <unordered_map>

#include "archegraph/error.hpp"
#include "archegraph/pencil.hpp"
#include "archegraph/rng.hpp"

namespace archegraph {
namespace {

constexpr double kKappaOneTol = 1e-9;

void check_inputs(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh, const Permutation& sigma) {
  if (lg.rows() != lh.rows()) throw InputError("graphs differ in order");
  if (lg.rows() < 2) throw InputError("alignment search needs at least 2 vertices");
  if (sigma.size() != static_cast<std::size_t>(lg.rows())) {
    throw InputError("permutation length " + std::to_string(sigma.size()) +
                     " does not match graph order " + std::to_string(lg.rows()));
  }
}

std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

double cached_kappa(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh, const Permutation& s,
                    KappaCache* cache) {
  if (cache) {
    if (auto it = cache->find(s); it != cache->end()) return it->second;
  }
  const double k = alignment_kappa(lg, lh, s);
  if (cache) cache->emplace(s, k);
  return k;
}

TranspositionStep reduce(const Permutation& sigma, double current,
                         const std::vector<std::pair<int, int>>& pairs,
                         const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t p = 1; p < pairs.size(); ++p) {
    if (values[p] < values[best]) best = p;
  }
  TranspositionStep step;
  step.swapped = pairs[best];
  step.sigma = apply_transposition(sigma, pairs[best].first, pairs[best].second);
  step.kappa = values[best];
  step.improvement = current - values[best];
  return step;
}

}  // namespace

double alignment_kappa(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                       const Permutation& sigma) {
  return kappa(lg, permute_symmetric(lh, sigma)).kappa;
}

TranspositionStep best_transposition_serial(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                                            const Permutation& sigma, KappaCache* cache) {
  check_inputs(lg, lh, sigma);
  const auto pairs = all_pairs(static_cast<int>(lg.rows()));
  std::vector<double> values(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    values[p] = cached_kappa(lg, lh, apply_transposition(sigma, pairs[p].first, pairs[p].second),
                             cache);
  }
  return reduce(sigma, cached_kappa(lg, lh, sigma, cache), pairs, values);
}

TranspositionStep best_transposition_parallel(const Eigen::MatrixXd& lg,
                                              const Eigen::MatrixXd& lh, const Permutation& sigma,
                                              KappaCache* cache) {
  check_inputs(lg, lh, sigma);
  const auto pairs = all_pairs(static_cast<int>(lg.rows()));
  const auto count = static_cast<std::ptrdiff_t>(pairs.size());
  std::vector<Permutation> neighbors(pairs.size());
  std::vector<double> values(pairs.size());
  std::vector<char> known(pairs.size(), 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    neighbors[p] = apply_transposition(sigma, pairs[p].first, pairs[p].second);
    if (cache) {
      if (auto it = cache->find(neighbors[p]); it != cache->end()) {
        values[p] = it->second;
        known[p] = 1;
      }
    }
  }
  std::optional<std::string> failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t p = 0; p < count; ++p) {
    if (known[p]) continue;
    try {
      values[p] = alignment_kappa(lg, lh, neighbors[p]);
    } catch (const std::exception& e) {
#pragma omp critical(archegraph_kappa_failure)
      if (!failure) failure = e.what();
    }
  }
  if (failure) throw InputError(*failure);
  if (cache) {
    for (std::size_t p = 0; p < pairs.size(); ++p) cache->emplace(neighbors[p], values[p]);
  }
  return reduce(sigma, cached_kappa(lg, lh, sigma, cache), pairs, values);
}

TranspositionStep best_transposition(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                                     const Permutation& sigma, Execution exec) {
  return exec == Execution::parallel ? best_transposition_parallel(lg, lh, sigma)
                                     : best_transposition_serial(lg, lh, sigma);
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::tolerance: return "tolerance";
    case StopReason::max_iters: return "max_iters";
    case StopReason::kappa_one: return "kappa_one";
  }
  return "unknown";
}

MatchResult cond_sim_grad_descent(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                                  const DescentOptions& opts, Permutation sigma0, Execution exec) {
  if (opts.max_iters < 1) throw InputError("q must be at least 1");
  if (!(opts.tolerance >= 0.0)) throw InputError("epsilon must be nonnegative");
  if (sigma0.size() == 0) sigma0 = Permutation::identity(static_cast<std::size_t>(lg.rows()));
  check_inputs(lg, lh, sigma0);

  KappaCache cache;
  MatchResult r;
  r.sigma = std::move(sigma0);
  r.kappa = cached_kappa(lg, lh, r.sigma, &cache);
  r.initial_kappa = r.kappa;
  r.trace.push_back({r.kappa, {-1, -1}});
  r.stopped_by = StopReason::max_iters;
  for (int it = 0; it < opts.max_iters; ++it) {
    if (r.kappa <= 1.0 + kKappaOneTol) {
      r.stopped_by = StopReason::kappa_one;
      return r;
    }
    const TranspositionStep step = exec == Execution::parallel
                                       ? best_transposition_parallel(lg, lh, r.sigma, &cache)
                                       : best_transposition_serial(lg, lh, r.sigma, &cache);
    ++r.sweeps;
    if (!(step.improvement > opts.tolerance)) {
      r.stopped_by = StopReason::tolerance;
      return r;
    }
    r.sigma = step.sigma;
    r.kappa = step.kappa;
    ++r.iterations;
    r.trace.push_back({r.kappa, step.swapped});
  }
  if (r.kappa <= 1.0 + kKappaOneTol) r.stopped_by = StopReason::kappa_one;
  return r;
}

std::vector<ChainSample> metropolis_chain(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                                          double lambda, int steps, std::uint64_t seed,
                                          Permutation sigma0) {
  if (!(lambda >= 1.0)) throw InputError("lambda must be at least 1");
  if (steps < 0) throw InputError("steps must be nonnegative");
  if (sigma0.size() == 0) sigma0 = Permutation::identity(static_cast<std::size_t>(lg.rows()));
  check_inputs(lg, lh, sigma0);

  const auto pairs = all_pairs(static_cast<int>(lg.rows()));
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  KappaCache cache;

  Permutation cur = std::move(sigma0);
  double f = cached_kappa(lg, lh, cur, &cache);
  const double log_lambda = std::log(lambda);
  std::vector<ChainSample> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int s = 0; s < steps; ++s) {
    const auto [i, j] = pairs[pick(rng)];
    Permutation next = apply_transposition(cur, i, j);
    const double fn = cached_kappa(lg, lh, next, &cache);
    // One uniform draw per step keeps the stream aligned regardless of the branch taken.
    const double u = unif(rng);
    const bool accept = fn <= f || u < std::exp(log_lambda * (f - fn));
    if (accept) {
      cur = std::move(next);
      f = fn;
    }
    out.push_back({cur, f, s, accept});
  }
  return out;
}

BruteForceResult brute_force_min_kappa(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& lh,
                                       Execution exec) {
  const auto n = lg.rows();
  if (n > kBruteForceMaxN) {
    throw InputError("brute force limited to n <= " + std::to_string(kBruteForceMaxN) +
                     ", got n=" + std::to_string(n));
  }
  check_inputs(lg, lh, Permutation::identity(static_cast<std::size_t>(n)));

  std::vector<Permutation> perms;
  std::vector<int> map(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) map[i] = i;
  do {
    perms.emplace_back(map);
  } while (std::next_permutation(map.begin(), map.end()));

  std::vector<double> values(perms.size());
  const auto count = static_cast<std::ptrdiff_t>(perms.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < count; ++p) values[p] = alignment_kappa(lg, lh, perms[p]);
  } else {
    for (std::ptrdiff_t p = 0; p < count; ++p) values[p] = alignment_kappa(lg, lh, perms[p]);
  }

  BruteForceResult r;
  std::size_t best = 0;
  for (std::size_t p = 1; p < perms.size(); ++p) {
    if (values[p] < values[best]) best = p;
  }
  r.sigma = perms[best];
  r.kappa = values[best];
  for (double v : values) {
    if (v <= r.kappa + 1e-6) ++r.minimizer_count;
  }
  return r;
}

Permutation parse_alignment(std::istream& in, const Graph& g, const Graph& h) {
  const std::size_t n = g.num_vertices();
  if (h.num_vertices() != n) throw InputError("graphs differ in order");
  std::unordered_map<std::string, int> g_index, h_index;
  for (std::size_t v = 0; v < n; ++v) {
    g_index.emplace(g.label(v), static_cast<int>(v));
    h_index.emplace(h.label(v), static_cast<int>(v));
  }
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a)) continue;
    if (!(ss >> b)) throw ParseError(lineno, "expected two tokens, found one");
    if (ss >> extra) throw ParseError(lineno, "expected two tokens, found more");
    const auto gi = g_index.find(a);
    if (gi == g_index.end()) throw ParseError(lineno, "unknown vertex '" + a + "' in first graph");
    const auto hj = h_index.find(b);
    if (hj == h_index.end()) throw ParseError(lineno, "unknown vertex '" + b + "' in second graph");
    if (map[hj->second] >= 0) throw ParseError(lineno, "vertex '" + b + "' assigned twice");
    if (used[gi->second]) throw ParseError(lineno, "vertex '" + a + "' assigned twice");
    map[hj->second] = gi->second;
    used[gi->second] = 1;
  }
  std::size_t next_free = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (map[j] >= 0) continue;
    while (used[next_free]) ++next_free;
    map[j] = static_cast<int>(next_free);
    used[next_free] = 1;
  }
  return Permutation(std::move(map));
}

Permutation parse_alignment_file(const std::string& path, const Graph& g, const Graph& h) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open alignment file " + path);
  return parse_alignment(in, g, h);
}

}  // namespace archegraph
