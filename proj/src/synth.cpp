#include "archegraph/synth.hpp"

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "archegraph/error.hpp"
#include "archegraph/rng.hpp"

namespace archegraph {

Graph gen_er(int n, double p, std::uint64_t seed) {
  if (n < 0) throw InputError("gen_er: n must be nonnegative");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("gen_er: p must lie in [0, 1]");
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unif(rng) < p) edges.emplace_back(i, j);
    }
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph gen_rmat(const RmatParams& params, std::uint64_t seed) {
  const double total = params.a + params.b + params.c + params.d;
  if (std::abs(total - 1.0) > 1e-9) throw InputError("gen_rmat: a+b+c+d must equal 1");
  if (params.a < 0 || params.b < 0 || params.c < 0 || params.d < 0) {
    throw InputError("gen_rmat: negative quadrant probability");
  }
  if (params.levels < 0 || params.levels > 30) throw InputError("gen_rmat: levels out of range");
  const int n = 1 << params.levels;
  const int attempts = params.edge_attempts < 0 ? 8 * n : params.edge_attempts;

  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Edge> edges;
  for (int e = 0; e < attempts; ++e) {
    int row = 0, col = 0;
    for (int l = 0; l < params.levels; ++l) {
      const double u = unif(rng);
      int r = 0, c = 0;
      if (u < params.a) {
      } else if (u < params.a + params.b) {
        c = 1;
      } else if (u < params.a + params.b + params.c) {
        r = 1;
      } else {
        r = 1;
        c = 1;
      }
      row = 2 * row + r;
      col = 2 * col + c;
    }
    if (row != col) edges.emplace_back(row, col);
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

double stratified_edge_probability(const StratifiedParams& params, int age_gap) {
  return params.p0 * std::exp(-params.alpha * std::abs(age_gap));
}

StratifiedGraph gen_stratified(const StratifiedParams& params, std::uint64_t seed) {
  if (params.n < 0) throw InputError("gen_stratified: n must be nonnegative");
  if (!(params.p0 >= 0.0 && params.p0 <= 1.0)) throw InputError("gen_stratified: p0 must lie in [0, 1]");
  if (params.alpha < 0.0) throw InputError("gen_stratified: alpha must be nonnegative");
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<int> age(1, 10);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  StratifiedGraph out;
  out.ages.resize(params.n);
  for (auto& a : out.ages) a = age(rng);
  std::vector<Edge> edges;
  for (int i = 0; i < params.n; ++i) {
    for (int j = i + 1; j < params.n; ++j) {
      if (unif(rng) < stratified_edge_probability(params, out.ages[i] - out.ages[j])) {
        edges.emplace_back(i, j);
      }
    }
  }
  out.graph = Graph(static_cast<std::size_t>(params.n), std::move(edges));
  return out;
}

SimplexCloud gen_simplex_cloud(int k, int n_points, double sigma_noise, std::uint64_t seed) {
  if (k < 1) throw InputError("gen_simplex_cloud: k must be at least 1");
  if (n_points < 0) throw InputError("gen_simplex_cloud: negative point count");
  if (sigma_noise < 0.0) throw InputError("gen_simplex_cloud: negative noise");
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  Eigen::MatrixXd kv(k, k + 1);
  for (;;) {
    for (Eigen::Index c = 0; c <= k; ++c) {
      for (Eigen::Index r = 0; r < k; ++r) kv(r, c) = coord(rng);
    }
    if (Simplex(kv).edge_gram().determinant() >= 0.1) break;
  }

  SimplexCloud out;
  out.true_simplex = Simplex(kv);
  out.sigma_noise = sigma_noise;
  out.weights.resize(n_points, k + 1);
  out.points.resize(n_points, k);
  for (int i = 0; i < n_points; ++i) {
    double total = 0.0;
    for (int j = 0; j <= k; ++j) total += (out.weights(i, j) = expo(rng));
    out.weights.row(i) /= total;
    out.points.row(i) = (kv * out.weights.row(i).transpose()).transpose();
    for (int r = 0; r < k; ++r) out.points(i, r) += sigma_noise * noise(rng);
  }
  return out;
}

namespace {

// Rows 0..n of the unsigned Stirling triangle.
std::vector<std::vector<BigCount>> stirling_table(int n) {
  std::vector<std::vector<BigCount>> c(n + 1, std::vector<BigCount>(n + 1, 0));
  c[0][0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int k = 1; k <= m; ++k) c[m][k] = c[m - 1][k - 1] + BigCount(m - 1) * c[m - 1][k];
  }
  return c;
}

}  // namespace

BigCount stirling_first(int n, int k) {
  if (n < 0 || k < 0) throw InputError("stirling_first: arguments must be nonnegative");
  if (k > n) return 0;
  return stirling_table(n)[n][k];
}

Permutation random_permutation_k_cycles(int n, int k, std::uint64_t seed) {
  if (n < 1 || k < 1 || k > n) {
    throw InputError("random_permutation_k_cycles: need 1 <= k <= n, got n=" + std::to_string(n) +
                     " k=" + std::to_string(k));
  }
  const auto c = stirling_table(n);
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Top-down: does element m (1-based) open its own cycle among the first m elements?
  std::vector<char> own_cycle(n + 1, 0);
  int cycles = k;
  for (int m = n; m >= 1; --m) {
    using boost::multiprecision::cpp_rational;
    const double p_own = cpp_rational(c[m - 1][cycles - 1], c[m][cycles]).convert_to<double>();
    own_cycle[m] = unif(rng) < p_own;
    if (own_cycle[m]) --cycles;
  }

  // Bottom-up: element m-1 (0-based) either fixes itself or is spliced in after a uniformly
  // chosen earlier element.
  std::vector<int> map(n);
  for (int m = 1; m <= n; ++m) {
    const int e = m - 1;
    if (own_cycle[m]) {
      map[e] = e;
    } else {
      std::uniform_int_distribution<int> pick(0, e - 1);
      const int j = pick(rng);
      map[e] = map[j];
      map[j] = e;
    }
  }
  return Permutation(std::move(map));
}

Graph gen_connected(const std::function<Graph(std::uint64_t)>& make, std::uint64_t seed,
                    int max_retries) {
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Graph g = make(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (is_connected(g)) return g;
  }
  throw NumericalError("no connected graph after " + std::to_string(max_retries) + " draws");
}

}  // namespace archegraph
