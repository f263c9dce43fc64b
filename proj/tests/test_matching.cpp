#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "archegraph/error.hpp"
#include "archegraph/matching.hpp"
#include "archegraph/pencil.hpp"
#include "archegraph/synth.hpp"
#include "fixtures.hpp"

using namespace archegraph;

namespace {

Eigen::MatrixXd lap(const Graph& g) { return laplacian(g).entries; }

Graph connected_er(int n, double p, std::uint64_t seed) {
  return gen_connected([&](std::uint64_t s) { return gen_er(n, p, s); }, seed);
}

// Chi-square critical values at significance 0.01.
double chi2_crit_001(int df) {
  static const std::map<int, double> table{{1, 6.635}, {2, 9.210}, {3, 11.345}, {4, 13.277}, {5, 15.086}};
  return table.at(df);
}

}  // namespace

TEST(BestTransposition, RecoversOneSwapAway) {
  const Graph g = fixtures::asymmetric6();
  const Graph h = relabel(g, Permutation({0, 1, 2, 4, 3, 5}));
  const TranspositionStep s = best_transposition(lap(g), lap(h), Permutation::identity(6));
  EXPECT_EQ(s.swapped, std::make_pair(3, 4));
  EXPECT_NEAR(s.kappa, 1.0, 1e-9);
  EXPECT_GT(s.improvement, 0.0);
}

TEST(BestTransposition, CompleteGraphTieBreak) {
  const auto l = lap(fixtures::k3());
  const TranspositionStep s = best_transposition(l, l, Permutation::identity(3));
  EXPECT_EQ(s.swapped, std::make_pair(0, 1));
  EXPECT_NEAR(s.kappa, 1.0, 1e-12);
  EXPECT_NEAR(s.improvement, 0.0, 1e-12);
}

TEST(BestTransposition, MatchesNeighborhoodEnumeration) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = connected_er(6, 0.5, seed);
    const Graph h = connected_er(6, 0.5, 100 + seed);
    const Permutation sigma = random_permutation_k_cycles(6, 3, seed);
    // Oracle: rebuild each relabeled graph from its edge list.
    double best = 1e300;
    std::pair<int, int> arg{-1, -1};
    for (int i = 0; i < 6; ++i) {
      for (int j = i + 1; j < 6; ++j) {
        const double k = kappa(laplacian(g), laplacian(relabel(h, apply_transposition(sigma, i, j)))).kappa;
        if (k < best) {
          best = k;
          arg = {i, j};
        }
      }
    }
    const TranspositionStep s = best_transposition(lap(g), lap(h), sigma);
    EXPECT_EQ(s.swapped, arg);
    EXPECT_NEAR(s.kappa, best, 1e-12 * best);
  }
}

TEST(BestTransposition, SerialAndParallelAgree) {
  const Graph g = connected_er(9, 0.4, 1);
  const Graph h = connected_er(9, 0.4, 2);
  const Permutation sigma = random_permutation_k_cycles(9, 2, 3);
  const auto a = best_transposition_serial(lap(g), lap(h), sigma);
  const auto b = best_transposition_parallel(lap(g), lap(h), sigma);
  EXPECT_EQ(a.sigma, b.sigma);
  EXPECT_EQ(a.kappa, b.kappa);
  EXPECT_EQ(a.improvement, b.improvement);
}

TEST(BestTransposition, Errors) {
  const Eigen::MatrixXd one = Eigen::MatrixXd::Zero(1, 1);
  EXPECT_THROW(best_transposition(one, one, Permutation::identity(1)), InputError);
  const auto l = lap(fixtures::k3());
  EXPECT_THROW(best_transposition(l, l, Permutation::identity(4)), InputError);
}

TEST(Descent, IdentityAlreadyOptimal) {
  const auto l = lap(connected_er(7, 0.5, 4));
  const MatchResult r = cond_sim_grad_descent(l, l);
  EXPECT_TRUE(r.sigma.is_identity());
  EXPECT_NEAR(r.kappa, 1.0, 1e-12);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.stopped_by, StopReason::kappa_one);
}

TEST(Descent, OneTranspositionRecoveredInOneStep) {
  const Graph g = fixtures::asymmetric6();
  const Graph h = relabel(g, Permutation({2, 1, 0, 3, 4, 5}));
  const MatchResult r = cond_sim_grad_descent(lap(g), lap(h));
  EXPECT_EQ(r.iterations, 1);
  EXPECT_NEAR(r.kappa, 1.0, 1e-9);
  EXPECT_EQ(r.stopped_by, StopReason::kappa_one);
  EXPECT_TRUE(relabel(h, r.sigma).same_edges(g));
}

TEST(Descent, TraceAndRecomputedKappa) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = connected_er(8, 0.5, 10 + seed);
    const Graph h = connected_er(8, 0.5, 20 + seed);
    DescentOptions opts;
    opts.tolerance = 1e-3 * static_cast<double>(seed % 2);
    const MatchResult r = cond_sim_grad_descent(lap(g), lap(h), opts);
    ASSERT_EQ(r.trace.size(), static_cast<std::size_t>(r.iterations) + 1);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      EXPECT_GT(r.trace[i - 1].kappa - r.trace[i].kappa, opts.tolerance);
    }
    EXPECT_LE(r.kappa, r.initial_kappa);
    EXPECT_NEAR(alignment_kappa(lap(g), lap(h), r.sigma), r.kappa, 1e-9 * r.kappa);
    EXPECT_NEAR(kappa(laplacian(g), laplacian(relabel(h, r.sigma))).kappa, r.kappa, 1e-9 * r.kappa);
  }
}

TEST(Descent, SingleSweepAndStartingPoint) {
  const Graph g = connected_er(8, 0.5, 31);
  const Graph h = connected_er(8, 0.5, 32);
  DescentOptions one;
  one.max_iters = 1;
  const MatchResult r = cond_sim_grad_descent(lap(g), lap(h), one);
  EXPECT_EQ(r.sweeps, 1);
  EXPECT_LE(r.iterations, 1);
  const Permutation start = random_permutation_k_cycles(8, 2, 9);
  const MatchResult s = cond_sim_grad_descent(lap(g), lap(h), {}, start);
  EXPECT_NEAR(s.initial_kappa, alignment_kappa(lap(g), lap(h), start), 1e-12);
  DescentOptions bad;
  bad.max_iters = 0;
  EXPECT_THROW(cond_sim_grad_descent(lap(g), lap(h), bad), InputError);
}

TEST(Descent, SerialAndParallelAgree) {
  const Graph g = connected_er(8, 0.5, 41);
  const Graph h = connected_er(8, 0.5, 42);
  const MatchResult a = cond_sim_grad_descent(lap(g), lap(h), {}, {}, Execution::serial);
  const MatchResult b = cond_sim_grad_descent(lap(g), lap(h), {}, {}, Execution::parallel);
  EXPECT_EQ(a.sigma, b.sigma);
  EXPECT_EQ(a.kappa, b.kappa);
  EXPECT_EQ(a.trace.size(), b.trace.size());
}

TEST(Metropolis, ConstantObjectiveIsUniform) {
  const auto l = lap(fixtures::k3());
  const auto samples = metropolis_chain(l, l, 5.0, 60000, 7);
  std::map<Permutation, int> counts;
  for (const auto& s : samples) {
    EXPECT_TRUE(s.accepted);
    ++counts[s.sigma];
  }
  ASSERT_EQ(counts.size(), 6u);
  double chi2 = 0.0;
  for (const auto& [p, c] : counts) chi2 += (c - 10000.0) * (c - 10000.0) / 10000.0;
  EXPECT_LT(chi2, chi2_crit_001(5));
}

TEST(Metropolis, LambdaOneAcceptsEverything) {
  const Graph g = connected_er(6, 0.5, 50);
  const Graph h = connected_er(6, 0.5, 51);
  for (const auto& s : metropolis_chain(lap(g), lap(h), 1.0, 2000, 3)) EXPECT_TRUE(s.accepted);
}

TEST(Metropolis, DeterministicPerSeed) {
  const Graph g = connected_er(6, 0.5, 52);
  const Graph h = connected_er(6, 0.5, 53);
  const auto a = metropolis_chain(lap(g), lap(h), 3.0, 500, 11);
  const auto b = metropolis_chain(lap(g), lap(h), 3.0, 500, 11);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].sigma, b[i].sigma);
    EXPECT_EQ(a[i].step_index, static_cast<int>(i));
    EXPECT_GE(a[i].f_value, 1.0 - 1e-9);
  }
  EXPECT_THROW(metropolis_chain(lap(g), lap(h), 0.5, 10, 1), InputError);
}

TEST(Metropolis, ConcentratesOnIsomorphisms) {
  const Graph g = fixtures::paw();
  const Graph h = relabel(g, Permutation({2, 3, 0, 1}));
  const auto omega = fixtures::isomorphisms(h, g);
  ASSERT_EQ(omega.size(), 2u);
  const auto samples = metropolis_chain(lap(g), lap(h), 1e6, 50000, 5);
  int inside = 0;
  for (std::size_t i = 5000; i < samples.size(); ++i) {
    if (std::find(omega.begin(), omega.end(), samples[i].sigma) != omega.end()) ++inside;
  }
  EXPECT_GE(inside, static_cast<int>(0.95 * 45000));
}

TEST(Metropolis, DetailedBalanceBetweenNeighbors) {
  const Graph g = fixtures::paw();
  const Graph h = relabel(g, Permutation({1, 3, 0, 2}));
  const auto samples = metropolis_chain(lap(g), lap(h), 2.0, 200000, 9);
  // Count transitions along every edge of the transposition graph in both directions; for a
  // reversible chain the two directional flows agree up to sampling noise.
  std::map<std::pair<Permutation, Permutation>, int> flow;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].sigma != samples[i - 1].sigma) ++flow[{samples[i - 1].sigma, samples[i].sigma}];
  }
  int checked = 0;
  for (const auto& [edge, forward] : flow) {
    if (!(edge.first < edge.second)) continue;
    const auto it = flow.find({edge.second, edge.first});
    const int backward = it == flow.end() ? 0 : it->second;
    if (forward + backward < 200) continue;
    EXPECT_LE(std::abs(forward - backward), 3.0 * std::sqrt(static_cast<double>(forward + backward)));
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(BruteForce, IsomorphicPairs) {
  const Graph g = fixtures::paw();
  const Graph h = relabel(g, Permutation({3, 1, 0, 2}));
  const BruteForceResult r = brute_force_min_kappa(lap(g), lap(h));
  EXPECT_NEAR(r.kappa, 1.0, 1e-9);
  EXPECT_EQ(r.minimizer_count, fixtures::isomorphisms(g, g).size());
  EXPECT_TRUE(relabel(h, r.sigma).same_edges(g));
}

TEST(BruteForce, PathAgainstTriangle) {
  const BruteForceResult r = brute_force_min_kappa(lap(fixtures::path3()), lap(fixtures::k3()));
  EXPECT_NEAR(r.kappa, 3.0, 1e-12);
  EXPECT_EQ(r.minimizer_count, 6u);
  EXPECT_TRUE(r.sigma.is_identity());
}

TEST(BruteForce, SizeGuardAndExecutionAgreement) {
  const Eigen::MatrixXd big = lap(connected_er(10, 0.5, 1));
  EXPECT_THROW(brute_force_min_kappa(big, big), InputError);
  const Graph g = connected_er(6, 0.5, 2);
  const Graph h = connected_er(6, 0.5, 3);
  const auto a = brute_force_min_kappa(lap(g), lap(h), Execution::serial);
  const auto b = brute_force_min_kappa(lap(g), lap(h), Execution::parallel);
  EXPECT_EQ(a.sigma, b.sigma);
  EXPECT_EQ(a.kappa, b.kappa);
  EXPECT_EQ(a.minimizer_count, b.minimizer_count);
}

TEST(BruteForce, KappaOneExactlyWhenIsomorphic) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 4 + static_cast<int>(seed % 3);
    const Graph g = connected_er(n, 0.5, 200 + seed);
    const Graph h = seed % 2 ? relabel(g, random_permutation_k_cycles(n, 1, seed))
                             : connected_er(n, 0.5, 300 + seed);
    const bool iso = !fixtures::isomorphisms(h, g).empty();
    const BruteForceResult r = brute_force_min_kappa(lap(g), lap(h));
    EXPECT_EQ(r.kappa <= 1.0 + 1e-8, iso) << "seed " << seed;
  }
}

TEST(Alignment, ParsesLabelsAndFillsGaps) {
  const Graph g = load_edge_list("a b\nb c\nc d\n");
  const Graph h = load_edge_list("w x\nx y\ny z\n");
  std::istringstream in("# matcher output\nd w\nc x\n");
  const Permutation s = parse_alignment(in, g, h);
  // sigma(w)=d=3, sigma(x)=c=2, y and z take a=0 and b=1 in order.
  EXPECT_EQ(s, Permutation({3, 2, 0, 1}));
}

TEST(Alignment, Errors) {
  const Graph g = load_edge_list("a b\nb c\n");
  const Graph h = load_edge_list("x y\ny z\n");
  std::istringstream unknown("a q\n");
  EXPECT_THROW(parse_alignment(unknown, g, h), ParseError);
  std::istringstream twice("a x\nb x\n");
  EXPECT_THROW(parse_alignment(twice, g, h), ParseError);
  std::istringstream reused("a x\na y\n");
  EXPECT_THROW(parse_alignment(reused, g, h), ParseError);
  std::istringstream short_line("a\n");
  EXPECT_THROW(parse_alignment(short_line, g, h), ParseError);
  std::istringstream ok("");
  const Graph small = load_edge_list("p q\n");
  EXPECT_THROW(parse_alignment(ok, g, small), InputError);
}
