#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace jetgh {

enum class MetricKind { Euclidean, Hyperbolic };

// Distance used between points of a cloud. Hyperbolic clouds live in the
// Lorentz ambient on the hyperboloid of curvature radius `radius`.
struct CloudMetric {
  MetricKind kind = MetricKind::Euclidean;
  double radius = 1.0;

  static CloudMetric euclidean() { return {}; }
  static CloudMetric hyperbolic(double rt) { return {MetricKind::Hyperbolic, rt}; }

  friend bool operator==(const CloudMetric&, const CloudMetric&) = default;
  std::string describe() const;
};

// Finite point set stored row-major.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(int dim, CloudMetric metric = {}) : dim_(dim), metric_(metric) {}

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const { return size() == 0; }
  const CloudMetric& metric() const { return metric_; }
  void set_metric(CloudMetric m) { metric_ = m; }

  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<double> point(std::size_t i) { return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)}; }

  void add(std::span<const double> p);
  void reserve(std::size_t n) { data_.reserve(n * dim_); }

  const std::vector<double>& data() const { return data_; }

 private:
  int dim_ = 0;
  CloudMetric metric_;
  std::vector<double> data_;
};

}  // namespace jetgh
