#include "archegraph/simquery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <cstdio>
#include <queue>

#include "archegraph/error.hpp"

namespace archegraph {
namespace {

double squared_distance(const Eigen::MatrixXd& p, Eigen::Index i, Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index d = 0; d < p.cols(); ++d) {
    const double diff = p(i, d) - p(j, d);
    s += diff * diff;
  }
  return s;
}

struct Candidate {
  double d2;
  Eigen::Index vertex;
};

// Orders candidates so the front is the one to evict first.
struct NearWorse {
  bool operator()(const Candidate& a, const Candidate& b) const {
    return a.d2 < b.d2 || (a.d2 == b.d2 && a.vertex < b.vertex);
  }
};
struct FarWorse {
  bool operator()(const Candidate& a, const Candidate& b) const {
    return a.d2 > b.d2 || (a.d2 == b.d2 && a.vertex < b.vertex);
  }
};

template <class Worse>
std::vector<Neighbor> drain(std::priority_queue<Candidate, std::vector<Candidate>, Worse>& heap) {
  std::vector<Neighbor> out(heap.size());
  for (auto k = out.size(); k-- > 0;) {
    out[k] = {heap.top().vertex, std::sqrt(heap.top().d2)};
    heap.pop();
  }
  return out;
}

void check_range(Eigen::Index n, Eigen::Index v, Eigen::Index t) {
  if (v < 0 || v >= n) {
    throw InputError("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
  }
  if (t < 1 || t > n - 1) {
    throw InputError("t must lie in [1, " + std::to_string(n - 1) + "], got " + std::to_string(t));
  }
}

constexpr double kSlack = 1e-12;

}  // namespace

double pair_distance(const MixtureTable& table, Eigen::Index i, Eigen::Index j) {
  const auto n = table.size();
  if (i < 0 || i >= n || j < 0 || j >= n) throw InputError("pair_distance: index out of range");
  return std::sqrt(squared_distance(table.theta, i, j));
}

SimilarityIndex::SimilarityIndex(MixtureTable table, std::size_t leaf_size)
    : points_(std::move(table.theta)), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
  order_.resize(static_cast<std::size_t>(points_.rows()));
  std::iota(order_.begin(), order_.end(), Eigen::Index{0});
  if (points_.rows() > 0) build(0, points_.rows());
}

int SimilarityIndex::build(Eigen::Index begin, Eigen::Index end) {
  Node node;
  node.begin = begin;
  node.end = end;
  node.lo = points_.row(order_[begin]).transpose();
  node.hi = node.lo;
  for (Eigen::Index q = begin + 1; q < end; ++q) {
    node.lo = node.lo.cwiseMin(points_.row(order_[q]).transpose());
    node.hi = node.hi.cwiseMax(points_.row(order_[q]).transpose());
  }
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (static_cast<std::size_t>(end - begin) <= leaf_size_) return id;

  Eigen::Index dim;
  (node.hi - node.lo).maxCoeff(&dim);
  const Eigen::Index mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](Eigen::Index a, Eigen::Index b) {
                     const double pa = points_(a, dim), pb = points_(b, dim);
                     return pa < pb || (pa == pb && a < b);
                   });
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void SimilarityIndex::check_query(Eigen::Index v, Eigen::Index t) const {
  check_range(points_.rows(), v, t);
}

std::vector<Neighbor> SimilarityIndex::most_similar(Eigen::Index v, Eigen::Index t) const {
  check_query(v, t);
  const Eigen::VectorXd q = points_.row(v).transpose();
  std::priority_queue<Candidate, std::vector<Candidate>, NearWorse> heap;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    const double lb =
        (node.lo - q).cwiseMax(0.0).cwiseMax(q - node.hi).squaredNorm();
    if (static_cast<Eigen::Index>(heap.size()) == t && lb > heap.top().d2 * (1.0 + kSlack)) continue;
    if (node.left < 0) {
      for (Eigen::Index k = node.begin; k < node.end; ++k) {
        const Eigen::Index i = order_[k];
        if (i == v) continue;
        const Candidate c{squared_distance(points_, v, i), i};
        if (static_cast<Eigen::Index>(heap.size()) < t) {
          heap.push(c);
        } else if (NearWorse{}(c, heap.top())) {
          heap.pop();
          heap.push(c);
        }
      }
      continue;
    }
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
  return drain(heap);
}

std::vector<Neighbor> SimilarityIndex::most_dissimilar(Eigen::Index v, Eigen::Index t) const {
  check_query(v, t);
  const Eigen::VectorXd q = points_.row(v).transpose();
  std::priority_queue<Candidate, std::vector<Candidate>, FarWorse> heap;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    const double ub = (q - node.lo).cwiseAbs().cwiseMax((q - node.hi).cwiseAbs()).squaredNorm();
    if (static_cast<Eigen::Index>(heap.size()) == t && ub < heap.top().d2 * (1.0 - kSlack)) continue;
    if (node.left < 0) {
      for (Eigen::Index k = node.begin; k < node.end; ++k) {
        const Eigen::Index i = order_[k];
        if (i == v) continue;
        const Candidate c{squared_distance(points_, v, i), i};
        if (static_cast<Eigen::Index>(heap.size()) < t) {
          heap.push(c);
        } else if (FarWorse{}(c, heap.top())) {
          heap.pop();
          heap.push(c);
        }
      }
      continue;
    }
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
  return drain(heap);
}

namespace {

template <class Better>
std::vector<Neighbor> scan(const MixtureTable& table, Eigen::Index v, Eigen::Index t, Better better) {
  check_range(table.size(), v, t);
  std::vector<Candidate> all;
  for (Eigen::Index i = 0; i < table.size(); ++i) {
    if (i != v) all.push_back({squared_distance(table.theta, v, i), i});
  }
  std::sort(all.begin(), all.end(), better);
  std::vector<Neighbor> out;
  for (Eigen::Index k = 0; k < t; ++k) out.push_back({all[k].vertex, std::sqrt(all[k].d2)});
  return out;
}

}  // namespace

std::vector<Neighbor> most_similar_scan(const MixtureTable& table, Eigen::Index v, Eigen::Index t) {
  return scan(table, v, t, NearWorse{});
}

std::vector<Neighbor> most_dissimilar_scan(const MixtureTable& table, Eigen::Index v,
                                           Eigen::Index t) {
  return scan(table, v, t, FarWorse{});
}

void write_neighbors_csv(std::ostream& out, const std::vector<Neighbor>& result,
                         const std::vector<std::string>& labels) {
  out << "rank,vertex_label,distance\n";
  char buf[32];
  for (std::size_t r = 0; r < result.size(); ++r) {
    const auto v = static_cast<std::size_t>(result[r].vertex);
    std::snprintf(buf, sizeof buf, "%.17g", result[r].distance);
    out << r + 1 << ',' << (v < labels.size() ? labels[v] : std::to_string(v)) << ',' << buf << '\n';
  }
}

}  // namespace archegraph
