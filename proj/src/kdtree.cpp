#include "jetgh/kdtree.hpp"

#include <algorithm>
#include <numeric>

#include "jetgh/errors.hpp"

namespace jetgh {

KdTree::KdTree(const PointCloud& cloud, int leaf_size)
    : cloud_(&cloud), dim_(cloud.dim()), leaf_size_(std::max(1, leaf_size)) {
  if (cloud.empty()) throw ValidationError("KdTree: empty cloud");
  order_.resize(cloud.size());
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * cloud.size() / leaf_size_ + 2);
  build(0, static_cast<int>(order_.size()), 0);
}

int KdTree::build(int begin, int end, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  if (end - begin <= leaf_size_) return id;

  // Split on the axis of largest spread.
  int axis = 0;
  double widest = -1.0;
  for (int a = 0; a < dim_; ++a) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = begin; i < end; ++i) {
      const double v = cloud_->point(order_[i])[a];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > widest) {
      widest = hi - lo;
      axis = a;
    }
  }
  if (widest <= 0.0) return id;  // all points coincide

  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) { return cloud_->point(a)[axis] < cloud_->point(b)[axis]; });
  const double split = cloud_->point(order_[mid])[axis];
  const int left = build(begin, mid, depth + 1);
  const int right = build(mid, end, depth + 1);
  Node& node = nodes_[id];
  node.axis = axis;
  node.split = split;
  node.left = left;
  node.right = right;
  return id;
}

void KdTree::search(int id, const double* q, double& best, double stop) const {
  const Node& node = nodes_[id];
  if (node.axis < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const double* p = cloud_->point(order_[i]).data();
      double d = 0.0;
      for (int a = 0; a < dim_ && d < best; ++a) {
        const double t = p[a] - q[a];
        d += t * t;
      }
      if (d < best) best = d;
    }
    return;
  }
  const double diff = q[node.axis] - node.split;
  const int near = diff < 0.0 ? node.left : node.right;
  const int far = diff < 0.0 ? node.right : node.left;
  search(near, q, best, stop);
  if (best <= stop) return;
  if (diff * diff < best) search(far, q, best, stop);
}

double KdTree::nearest_sq(std::span<const double> q) const {
  return nearest_sq_bounded(q, -1.0);
}

double KdTree::nearest_sq_bounded(std::span<const double> q, double stop_below_sq) const {
  if (static_cast<int>(q.size()) != dim_) throw ValidationError("KdTree: query dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  search(0, q.data(), best, stop_below_sq);
  return best;
}

}  // namespace jetgh
