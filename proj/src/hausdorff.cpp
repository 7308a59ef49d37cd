#include "jetgh/hausdorff.hpp"

#include <algorithm>
#include <limits>

#include "jetgh/errors.hpp"
#include "jetgh/geometry.hpp"

namespace jetgh {

namespace {

void check_pair(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw ValidationError("Hausdorff distance of an empty cloud");
  if (a.dim() != b.dim())
    throw ValidationError("Hausdorff distance: clouds have dimensions " + std::to_string(a.dim()) +
                          " and " + std::to_string(b.dim()));
  if (!(a.metric() == b.metric()))
    throw ValidationError("Hausdorff distance: metric mismatch (" + a.metric().describe() + " vs " +
                          b.metric().describe() + ")");
}

}  // namespace

double cloud_distance(const CloudMetric& metric, const double* p, const double* q, int dim) {
  if (metric.kind == MetricKind::Hyperbolic) return hyperbolic_distance_unchecked(p, q, dim, metric.radius);
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
  return std::sqrt(s);
}

NearestNeighborIndex::NearestNeighborIndex(const PointCloud& target) : target_(&target) {
  if (target.empty()) throw ValidationError("NearestNeighborIndex: empty cloud");
  if (target.metric().kind == MetricKind::Euclidean) tree_ = std::make_unique<KdTree>(target);
}

double NearestNeighborIndex::nearest(const double* q, double floor) const {
  const int dim = target_->dim();
  if (tree_) {
    const double d2 = tree_->nearest_sq_bounded(std::span<const double>(q, dim), floor * floor);
    return std::sqrt(d2);
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < target_->size(); ++j) {
    best = std::min(best, cloud_distance(target_->metric(), q, target_->point(j).data(), dim));
    if (best <= floor) break;
  }
  return best;
}

double NearestNeighborIndex::directed_from(const PointCloud& source, double floor) const {
  check_pair(source, *target_);
  return directed_max(
      source.size(),
      [&](std::size_t i, double* buf) { std::copy_n(source.point(i).data(), source.dim(), buf); },
      floor);
}

double directed_hausdorff(const PointCloud& a, const PointCloud& b) {
  check_pair(a, b);
  return NearestNeighborIndex(b).directed_from(a);
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  check_pair(a, b);
  const double ab = NearestNeighborIndex(b).directed_from(a);
  return NearestNeighborIndex(a).directed_from(b, ab);
}

double directed_hausdorff_brute(const PointCloud& a, const PointCloud& b) {
  check_pair(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j)
      best = std::min(best, cloud_distance(a.metric(), a.point(i).data(), b.point(j).data(), a.dim()));
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff_brute(const PointCloud& a, const PointCloud& b) {
  return std::max(directed_hausdorff_brute(a, b), directed_hausdorff_brute(b, a));
}

}  // namespace jetgh
