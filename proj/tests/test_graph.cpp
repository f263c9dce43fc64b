#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "archegraph/error.hpp"
#include "archegraph/graph.hpp"
#include "archegraph/rng.hpp"
#include "archegraph/synth.hpp"

using namespace archegraph;

namespace {

Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }
Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

Permutation random_perm(std::size_t n, Rng& rng) {
  std::vector<int> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<int>(i);
  std::shuffle(m.begin(), m.end(), rng);
  return Permutation(m);
}

}  // namespace

TEST(LoadEdgeList, MapsTokensInFirstAppearanceOrder) {
  const Graph g = load_edge_list("a b\nb c");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(g.labels(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(LoadEdgeList, DropsSelfLoops) {
  LoadReport rep;
  const Graph g = load_edge_list("0 0\n0 1", &rep);
  EXPECT_EQ(g.num_vertices(), 2u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(rep.self_loops_dropped, 1u);
}

TEST(LoadEdgeList, CollapsesDuplicates) {
  LoadReport rep;
  const Graph g = load_edge_list("x y\ny x", &rep);
  EXPECT_EQ(g.num_vertices(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(rep.duplicates_dropped, 1u);
}

TEST(LoadEdgeList, CommentsAndBlankLines) {
  const Graph g = load_edge_list("# header\n\n1 2  # trailing\n2 3\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(LoadEdgeList, MalformedLineReportsLineNumber) {
  try {
    load_edge_list("a b\nc\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(load_edge_list("a b c\n"), ParseError);
}

TEST(LoadEdgeList, EmptyInputIsAnError) {
  EXPECT_THROW(load_edge_list(""), InputError);
  EXPECT_THROW(load_edge_list("# only a comment\n"), InputError);
}

TEST(LoadEdgeList, RoundTripsThroughWriter) {
  const Graph g = load_edge_list("u v\nv w\nw u\n");
  std::ostringstream out;
  write_edge_list(out, g);
  const Graph back = load_edge_list(out.str());
  EXPECT_TRUE(back.same_edges(g));
  EXPECT_EQ(back.labels(), g.labels());
}

TEST(GraphInvariants, RejectsInvalidEdges) {
  EXPECT_THROW(Graph(2, {{0, 0}}), InputError);
  EXPECT_THROW(Graph(2, {{0, 2}}), InputError);
  EXPECT_THROW(Graph(2, {{0, 1}}, {"a"}), InputError);
  const Graph g(3, {{2, 0}, {0, 2}});
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 2}}));
}

TEST(Laplacian, Path) {
  Eigen::Matrix3d expected;
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  EXPECT_EQ(laplacian(path3()).entries, Eigen::MatrixXd(expected));
}

TEST(Laplacian, Triangle) {
  const auto l = laplacian(triangle()).entries;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(l(i, j), i == j ? 2.0 : -1.0);
  }
}

TEST(Laplacian, EmptyGraphIsZero) {
  EXPECT_EQ(laplacian(Graph(2, {})).entries, Eigen::MatrixXd::Zero(2, 2));
}

TEST(Laplacian, RowSumsAndQuadraticForm) {
  const Graph g = gen_er(30, 0.2, 5);
  const auto l = laplacian(g).entries;
  for (Eigen::Index i = 0; i < l.rows(); ++i) EXPECT_EQ(l.row(i).sum(), 0.0);
  Rng rng = make_rng(11);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd x(30);
    for (auto& v : x) v = normal(rng);
    double direct = 0.0;
    for (auto [u, v] : g.edges()) direct += (x(u) - x(v)) * (x(u) - x(v));
    EXPECT_NEAR(x.dot(l * x), direct, 1e-9 * (1.0 + direct));
    EXPECT_GE(x.dot(l * x), 0.0);
  }
}

TEST(NormalizedLaplacian, SingleEdge) {
  Eigen::Matrix2d expected;
  expected << 1, -1, -1, 1;
  EXPECT_TRUE(normalized_laplacian(Graph(2, {{0, 1}})).entries.isApprox(Eigen::MatrixXd(expected)));
}

TEST(NormalizedLaplacian, TriangleSpectrum) {
  const auto l = normalized_laplacian(triangle()).entries;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 1.5, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(2), 1.5, 1e-12);
}

TEST(NormalizedLaplacian, IsolatedVertexNamed) {
  const Graph g = load_edge_list("a b\nc c\n");
  try {
    normalized_laplacian(g);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("c"), std::string::npos);
  }
}

TEST(Connectivity, Examples) {
  EXPECT_TRUE(is_connected(path3()));
  EXPECT_TRUE(is_connected(Graph(1, {})));
  const Graph two(4, {{0, 1}, {2, 3}});
  EXPECT_FALSE(is_connected(two));
  const Graph comp = largest_component(two);
  EXPECT_EQ(comp.num_vertices(), 2u);
  EXPECT_EQ(comp.num_edges(), 1u);
  EXPECT_EQ(comp.label(0), "0");
}

TEST(Connectivity, LargestComponentKeepsLabels) {
  const Graph g = load_edge_list("a b\nc d\nd e\n");
  const Graph comp = largest_component(g);
  EXPECT_EQ(comp.labels(), (std::vector<std::string>{"c", "d", "e"}));
  EXPECT_TRUE(is_connected(comp));
}

TEST(Relabel, Examples) {
  Rng rng = make_rng(3);
  EXPECT_TRUE(relabel(triangle(), random_perm(3, rng)).same_edges(triangle()));
  const Graph star = relabel(path3(), Permutation({1, 0, 2}));
  EXPECT_EQ(star.edges(), (std::vector<Edge>{{0, 1}, {0, 2}}));
  EXPECT_TRUE(relabel(path3(), Permutation::identity(3)).same_edges(path3()));
  EXPECT_THROW(relabel(path3(), Permutation::identity(4)), InputError);
}

TEST(Relabel, LaplacianConjugation) {
  Rng rng = make_rng(8);
  for (int t = 0; t < 20; ++t) {
    const Graph g = gen_er(9, 0.4, static_cast<std::uint64_t>(t));
    const Permutation s = random_perm(9, rng);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(9, 9);
    for (int i = 0; i < 9; ++i) p(s(i), i) = 1.0;
    const auto l = laplacian(g).entries;
    EXPECT_EQ(laplacian(relabel(g, s)).entries, p * l * p.transpose());
    EXPECT_EQ(permute_symmetric(l, s), p * l * p.transpose());
  }
}

TEST(Relabel, Properties) {
  Rng rng = make_rng(9);
  for (int t = 0; t < 30; ++t) {
    const Graph g = gen_er(10, 0.3, static_cast<std::uint64_t>(100 + t));
    const Permutation s = random_perm(10, rng);
    const Graph h = relabel(g, s);
    auto dg = g.degrees(), dh = h.degrees();
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    EXPECT_EQ(dg, dh);
    EXPECT_TRUE(relabel(h, invert(s)).same_edges(g));
  }
}
