#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "archegraph/simplex_fit.hpp"

namespace archegraph {

// Euclidean distance between rows i and j of the mixture table.
double pair_distance(const MixtureTable& table, Eigen::Index i, Eigen::Index j);

struct Neighbor {
  Eigen::Index vertex = 0;
  double distance = 0.0;
};

// Exact kd-tree over the rows of a mixture table. Results equal a linear scan ordered by
// distance with the lower index first on equal distance. Immutable after construction.
class SimilarityIndex {
 public:
  explicit SimilarityIndex(MixtureTable table, std::size_t leaf_size = 8);

  Eigen::Index size() const { return points_.rows(); }
  const Eigen::MatrixXd& points() const { return points_; }

  // t nearest vertices to v (v excluded), ascending distance. Requires 1 <= t <= n-1.
  std::vector<Neighbor> most_similar(Eigen::Index v, Eigen::Index t) const;
  // t farthest vertices from v, descending distance.
  std::vector<Neighbor> most_dissimilar(Eigen::Index v, Eigen::Index t) const;

 private:
  struct Node {
    Eigen::Index begin = 0, end = 0;  // range in order_
    int left = -1, right = -1;
    Eigen::VectorXd lo, hi;  // bounding box
  };

  int build(Eigen::Index begin, Eigen::Index end);
  void check_query(Eigen::Index v, Eigen::Index t) const;

  Eigen::MatrixXd points_;
  std::vector<Eigen::Index> order_;
  std::vector<Node> nodes_;
  std::size_t leaf_size_;
};

// Reference implementations by full scan.
std::vector<Neighbor> most_similar_scan(const MixtureTable& table, Eigen::Index v, Eigen::Index t);
std::vector<Neighbor> most_dissimilar_scan(const MixtureTable& table, Eigen::Index v,
                                           Eigen::Index t);

// "rank,vertex_label,distance" rows, rank starting at 1.
void write_neighbors_csv(std::ostream& out, const std::vector<Neighbor>& result,
                         const std::vector<std::string>& labels);

}  // namespace archegraph
