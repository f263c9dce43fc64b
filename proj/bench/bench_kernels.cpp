#include <benchmark/benchmark.h>

#include "archegraph/matching.hpp"
#include "archegraph/simplex_fit.hpp"
#include "archegraph/synth.hpp"

using namespace archegraph;

namespace {

struct ThetaCase {
  Eigen::MatrixXd points;
  Simplex simplex;
};

ThetaCase theta_case(int k, int n) {
  const SimplexCloud c = gen_simplex_cloud(k, n, 0.5, 1);
  return {c.points, Simplex(0.95 * c.true_simplex.vertices())};
}

void BM_ThetaBatchSerial(benchmark::State& state) {
  const auto c = theta_case(static_cast<int>(state.range(0)), 4000);
  for (auto _ : state) benchmark::DoNotOptimize(solve_thetas_serial(c.points, c.simplex));
  state.SetItemsProcessed(state.iterations() * c.points.rows());
}

void BM_ThetaBatchParallel(benchmark::State& state) {
  const auto c = theta_case(static_cast<int>(state.range(0)), 4000);
  for (auto _ : state) benchmark::DoNotOptimize(solve_thetas_parallel(c.points, c.simplex));
  state.SetItemsProcessed(state.iterations() * c.points.rows());
}

struct PairCase {
  Eigen::MatrixXd lg, lh;
  Permutation sigma;
};

PairCase pair_case(int n) {
  auto make = [n](std::uint64_t s) { return gen_er(n, 0.3, s); };
  const Graph g = gen_connected(make, 1);
  const Graph h = gen_connected(make, 2);
  return {laplacian(g).entries, laplacian(h).entries, Permutation::identity(static_cast<std::size_t>(n))};
}

void BM_TranspositionSerial(benchmark::State& state) {
  const auto c = pair_case(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(best_transposition_serial(c.lg, c.lh, c.sigma));
}

void BM_TranspositionParallel(benchmark::State& state) {
  const auto c = pair_case(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(best_transposition_parallel(c.lg, c.lh, c.sigma));
}

void BM_BruteForceSerial(benchmark::State& state) {
  const auto c = pair_case(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_min_kappa(c.lg, c.lh, Execution::serial));
}

void BM_BruteForceParallel(benchmark::State& state) {
  const auto c = pair_case(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_min_kappa(c.lg, c.lh, Execution::parallel));
}

}  // namespace

BENCHMARK(BM_ThetaBatchSerial)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThetaBatchParallel)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TranspositionSerial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TranspositionParallel)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
