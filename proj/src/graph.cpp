#include "archegraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "archegraph/error.hpp"

namespace archegraph {

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != n_) {
    throw InputError("label count " + std::to_string(labels_.size()) + " does not match n=" +
                     std::to_string(n_));
  }
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n_ || static_cast<std::size_t>(v) >= n_) {
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::string Graph::label(std::size_t v) const {
  return labels_.empty() ? std::to_string(v) : labels_.at(v);
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (auto [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
  std::vector<std::vector<int>> adj(n_);
  for (auto [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

Graph load_edge_list(std::istream& in, LoadReport* report) {
  LoadReport local;
  std::unordered_map<std::string, int> index;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  auto intern = [&](const std::string& token) {
    auto [it, inserted] = index.emplace(token, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;  // blank or comment-only
    if (!(ls >> b)) throw ParseError(lineno, "expected two tokens, found one");
    if (ls >> extra) throw ParseError(lineno, "expected two tokens, found more");
    ++local.lines;
    int u = intern(a);
    int v = intern(b);
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (labels.empty()) throw InputError("edge list is empty");

  std::size_t raw = edges.size();
  const auto n = labels.size();
  Graph g(n, std::move(edges), std::move(labels));
  local.duplicates_dropped = raw - g.num_edges();
  if (report) *report = local;
  return g;
}

Graph load_edge_list(std::string_view text, LoadReport* report) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in, report);
}

Graph load_edge_list_file(const std::string& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return load_edge_list(in, report);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

LaplacianMatrix laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    L(u, u) += 1.0;
    L(v, v) += 1.0;
    L(u, v) = -1.0;
    L(v, u) = -1.0;
  }
  return {std::move(L), LaplacianKind::combinatorial};
}

LaplacianMatrix normalized_laplacian(const Graph& g) {
  const auto deg = g.degrees();
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (deg[v] == 0) {
      throw InputError("normalized Laplacian undefined: vertex " + g.label(v) + " is isolated");
    }
  }
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
  for (auto [u, v] : g.edges()) {
    double w = 1.0 / std::sqrt(static_cast<double>(deg[u]) * static_cast<double>(deg[v]));
    L(u, v) = -w;
    L(v, u) = -w;
  }
  return {std::move(L), LaplacianKind::normalized};
}

namespace {

// Component id per vertex, ids assigned in order of smallest contained vertex.
std::vector<int> component_ids(const Graph& g, int* count) {
  const auto adj = g.adjacency_lists();
  std::vector<int> comp(g.num_vertices(), -1);
  int next = 0;
  for (std::size_t s = 0; s < comp.size(); ++s) {
    if (comp[s] != -1) continue;
    std::queue<int> q;
    q.push(static_cast<int>(s));
    comp[s] = next;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u]) {
        if (comp[w] == -1) {
          comp[w] = next;
          q.push(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

}  // namespace

bool is_connected(const Graph& g) {
  int count = 0;
  component_ids(g, &count);
  return count <= 1;
}

Graph largest_component(const Graph& g) {
  int count = 0;
  const auto comp = component_ids(g, &count);
  if (count <= 1) return g;
  std::vector<std::size_t> sizes(count, 0);
  for (int c : comp) ++sizes[c];
  // strict > keeps the lowest id, i.e. the component with the smallest vertex
  int best = 0;
  for (int c = 1; c < count; ++c) {
    if (sizes[c] > sizes[best]) best = c;
  }
  std::vector<int> remap(g.num_vertices(), -1);
  std::vector<std::string> labels;
  int next = 0;
  for (std::size_t v = 0; v < comp.size(); ++v) {
    if (comp[v] != best) continue;
    remap[v] = next++;
    labels.push_back(g.label(v));
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (remap[u] >= 0 && remap[v] >= 0) edges.emplace_back(remap[u], remap[v]);
  }
  return Graph(static_cast<std::size_t>(next), std::move(edges),
               g.has_labels() ? std::move(labels) : std::vector<std::string>{});
}

Graph relabel(const Graph& g, const Permutation& sigma) {
  if (sigma.size() != g.num_vertices()) {
    throw InputError("relabel: permutation length " + std::to_string(sigma.size()) +
                     " != n=" + std::to_string(g.num_vertices()));
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (auto [u, v] : g.edges()) edges.emplace_back(sigma(u), sigma(v));
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.resize(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) labels[sigma(v)] = g.labels()[v];
  }
  return Graph(g.num_vertices(), std::move(edges), std::move(labels));
}

Eigen::MatrixXd permute_symmetric(const Eigen::MatrixXd& m, const Permutation& sigma) {
  const auto n = m.rows();
  if (static_cast<std::size_t>(n) != sigma.size()) throw InputError("permute: size mismatch");
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto sj = sigma(j);
    for (Eigen::Index i = 0; i < n; ++i) out(sigma(i), sj) = m(i, j);
  }
  return out;
}

}  // namespace archegraph
