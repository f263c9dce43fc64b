#include <gtest/gtest.h>

#include <cmath>

#include "archegraph/error.hpp"
#include "archegraph/graph.hpp"
#include "archegraph/rng.hpp"
#include "archegraph/spectral.hpp"
#include "archegraph/synth.hpp"

using namespace archegraph;

namespace {

Eigen::MatrixXd pairwise(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd d(x.rows(), x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.rows(); ++j) d(i, j) = (x.row(i) - x.row(j)).norm();
  }
  return d;
}

}  // namespace

TEST(SymEig, Examples) {
  EXPECT_TRUE(sym_eig(Eigen::MatrixXd::Identity(3, 3)).values.isApprox(Eigen::Vector3d(1, 1, 1)));
  const auto path = laplacian(Graph(3, {{0, 1}, {1, 2}})).entries;
  const auto v = sym_eig(path).values;
  EXPECT_NEAR(v(0), 0.0, 1e-12);
  EXPECT_NEAR(v(1), 1.0, 1e-12);
  EXPECT_NEAR(v(2), 3.0, 1e-12);
  Eigen::Matrix2d d;
  d << 2, 0, 0, -1;
  EXPECT_TRUE(sym_eig(d).values.isApprox(Eigen::Vector2d(-1, 2)));
}

TEST(SymEig, RejectsAsymmetric) {
  Eigen::Matrix2d m;
  m << 1, 2, 3, 4;
  EXPECT_THROW(sym_eig(m), InputError);
}

TEST(SymEig, ResidualsOrthonormalityReconstruction) {
  Rng rng = make_rng(4);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 10; ++t) {
    Eigen::MatrixXd a(12, 12);
    for (auto& x : a.reshaped()) x = normal(rng);
    const Eigen::MatrixXd m = a + a.transpose();
    const auto e = sym_eig(m);
    const double fro = m.norm();
    for (Eigen::Index i = 0; i < 12; ++i) {
      EXPECT_LE((m * e.vectors.col(i) - e.values(i) * e.vectors.col(i)).norm(), 1e-8 * fro);
    }
    EXPECT_LE((e.vectors.transpose() * e.vectors - Eigen::MatrixXd::Identity(12, 12)).norm(), 1e-8);
    const Eigen::MatrixXd rec = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    EXPECT_LE((rec - m).norm(), 1e-7 * fro);
    for (Eigen::Index i = 1; i < 12; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
  }
}

TEST(Embed, DroppedVectorIsTrivial) {
  const Graph g = gen_connected([](std::uint64_t s) { return gen_er(15, 0.3, s); }, 2);
  const auto l = normalized_laplacian(g).entries;
  const auto e = sym_eig(l);
  EXPECT_LE(e.values(0), 1e-8);
  Eigen::VectorXd d(15);
  const auto deg = g.degrees();
  for (int v = 0; v < 15; ++v) d(v) = std::sqrt(static_cast<double>(deg[v]));
  EXPECT_NEAR(std::abs(d.normalized().dot(e.vectors.col(0))), 1.0, 1e-10);
  const Embedding emb = embed(g, 3);
  EXPECT_EQ(emb.coords.rows(), 15);
  EXPECT_EQ(emb.dimension(), 3);
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(std::abs(emb.coords.col(c).dot(d.normalized())), 0.0, 1e-10);
}

TEST(Embed, StarLeavesFormEquilateralTriangle) {
  // Normalized Laplacian of K_{1,3} has eigenvalue 1 with multiplicity 2 on vectors supported
  // on the leaves summing to zero; any orthonormal basis of that plane puts the leaves at the
  // vertices of an equilateral triangle with side sqrt(2) and the center at the origin.
  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const Embedding emb = embed(star, 2);
  EXPECT_NEAR(emb.eigenvalues(0), 1.0, 1e-12);
  EXPECT_NEAR(emb.eigenvalues(1), 1.0, 1e-12);
  EXPECT_NEAR(emb.coords.row(0).norm(), 0.0, 1e-12);
  const auto d = pairwise(emb.coords);
  EXPECT_NEAR(d(1, 2), std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(d(1, 3), std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(d(2, 3), std::sqrt(2.0), 1e-10);
}

TEST(Embed, PathSignConvention) {
  const Embedding emb = embed(Graph(3, {{0, 1}, {1, 2}}), 1);
  EXPECT_NEAR(emb.eigenvalues(0), 1.0, 1e-12);
  EXPECT_NEAR(emb.coords(0, 0), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(emb.coords(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(emb.coords(2, 0), -std::sqrt(0.5), 1e-12);
}

TEST(Embed, Errors) {
  EXPECT_THROW(embed(Graph(4, {{0, 1}, {2, 3}}), 1), InputError);
  const Graph path(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_THROW(embed(path, 0), InputError);
  EXPECT_THROW(embed(path, 3), InputError);
  EXPECT_NO_THROW(embed(path, 2));
}

TEST(Embed, RelabelInvariance) {
  const Graph g = gen_connected([](std::uint64_t s) { return gen_er(20, 0.3, s); }, 17);
  const Permutation s = random_permutation_k_cycles(20, 3, 5);
  const Embedding a = embed(g, 3);
  const Embedding b = embed(relabel(g, s), 3);
  Eigen::MatrixXd back(20, 3);
  for (int v = 0; v < 20; ++v) back.row(v) = b.coords.row(s(v));
  EXPECT_LE((pairwise(a.coords) - pairwise(back)).cwiseAbs().maxCoeff(), 1e-6);
}
