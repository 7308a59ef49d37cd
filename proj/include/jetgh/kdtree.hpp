#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "jetgh/point_cloud.hpp"

namespace jetgh {

// Static k-d tree over a Euclidean point cloud. The cloud must outlive the
// tree. Queries are read-only and may run concurrently.
class KdTree {
 public:
  explicit KdTree(const PointCloud& cloud, int leaf_size = 12);

  // Squared distance to the nearest point.
  double nearest_sq(std::span<const double> q) const;

  // Squared distance to the nearest point, except that the search may stop
  // early and return any value <= stop_below_sq once such a point is found.
  double nearest_sq_bounded(std::span<const double> q, double stop_below_sq) const;

 private:
  struct Node {
    int begin = 0, end = 0;  // range in order_ (leaves)
    int left = -1, right = -1;
    int axis = -1;
    double split = 0.0;
  };

  int build(int begin, int end, int depth);
  void search(int node, const double* q, double& best, double stop) const;

  const PointCloud* cloud_;
  int dim_;
  int leaf_size_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace jetgh
