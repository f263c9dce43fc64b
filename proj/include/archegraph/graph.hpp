#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "archegraph/permutation.hpp"

namespace archegraph {

using Edge = std::pair<int, int>;

// Undirected simple graph on vertices 0..n-1. Edges are stored once as (u, v) with u < v,
// sorted and deduplicated. Optional labels keep the original vertex names of a loaded file.
class Graph {
 public:
  Graph() = default;
  // Normalizes orientation, sorts and dedupes; throws InputError on self-loops or
  // out-of-range endpoints.
  Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels = {});

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  // Label of vertex v, or its index as text when the graph is unlabeled.
  std::string label(std::size_t v) const;

  std::vector<std::size_t> degrees() const;
  std::vector<std::vector<int>> adjacency_lists() const;
  bool has_edge(int u, int v) const;

  // Edge-set equality; labels are ignored.
  bool same_edges(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

struct LoadReport {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

// Two whitespace-separated tokens per line, '#' starts a comment. Tokens become dense
// indices in order of first appearance. Self-loops and repeated edges are dropped and counted.
Graph load_edge_list(std::istream& in, LoadReport* report = nullptr);
Graph load_edge_list(std::string_view text, LoadReport* report = nullptr);
Graph load_edge_list_file(const std::string& path, LoadReport* report = nullptr);

// Writes "u v" lines using labels when present.
void write_edge_list(std::ostream& out, const Graph& g);

enum class LaplacianKind { combinatorial, normalized };

struct LaplacianMatrix {
  Eigen::MatrixXd entries;
  LaplacianKind kind = LaplacianKind::combinatorial;

  Eigen::Index size() const { return entries.rows(); }
};

// D - A.
LaplacianMatrix laplacian(const Graph& g);
// I - D^{-1/2} A D^{-1/2}; throws InputError naming the first isolated vertex.
LaplacianMatrix normalized_laplacian(const Graph& g);

bool is_connected(const Graph& g);
// Induced subgraph on the largest connected component, vertices renumbered in increasing
// original order. Ties go to the component holding the smallest original index.
Graph largest_component(const Graph& g);

// Vertex v becomes sigma(v). laplacian(relabel(g, s)) == P L P^T with P(s(i), i) = 1.
Graph relabel(const Graph& g, const Permutation& sigma);

// P L P^T without rebuilding the graph.
Eigen::MatrixXd permute_symmetric(const Eigen::MatrixXd& m, const Permutation& sigma);

}  // namespace archegraph
