#pragma once

// Directed and symmetric Hausdorff distances between finite clouds:
//   h(A, B) = max_{a in A} min_{b in B} d(a, b),  d_H = max(h(A, B), h(B, A)).
// Euclidean clouds use a k-d tree with early termination per query (a query
// that finds a neighbour closer than the running maximum cannot raise it);
// hyperbolic clouds are scanned exhaustively.

#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

#include "jetgh/kdtree.hpp"
#include "jetgh/point_cloud.hpp"

namespace jetgh {

double directed_hausdorff(const PointCloud& a, const PointCloud& b);
double hausdorff(const PointCloud& a, const PointCloud& b);

// Plain O(|A| |B|) versions used as oracles.
double directed_hausdorff_brute(const PointCloud& a, const PointCloud& b);
double hausdorff_brute(const PointCloud& a, const PointCloud& b);

// Distance between two points of a cloud under its metric.
double cloud_distance(const CloudMetric& metric, const double* p, const double* q, int dim);

// Nearest-neighbour structure over a fixed target cloud for repeated directed
// queries from moving sources (the alignment objective).
class NearestNeighborIndex {
 public:
  explicit NearestNeighborIndex(const PointCloud& target);

  const PointCloud& target() const { return *target_; }

  // max over the sources of the distance to the target, never less than
  // `floor`. `fill(i, buffer)` writes source point i into buffer.
  template <class Fill>
  double directed_max(std::size_t count, Fill&& fill, double floor = 0.0) const {
    std::vector<double> q(target_->dim());
    double worst = floor;
    for (std::size_t i = 0; i < count; ++i) {
      fill(i, q.data());
      const double d = nearest(q.data(), worst);
      if (d > worst) worst = d;
    }
    return worst;
  }

  double directed_from(const PointCloud& source, double floor = 0.0) const;

  // Distance to the nearest target point; may return any value <= floor once
  // it knows the true distance does not exceed floor.
  double nearest(const double* q, double floor) const;

 private:
  const PointCloud* target_;
  std::unique_ptr<KdTree> tree_;
};

}  // namespace jetgh
