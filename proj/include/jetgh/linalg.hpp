#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace jetgh {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Connection coefficients Gamma^k_{ij} of an n-dimensional chart, stored
// densely with the upper index first.
class Christoffel {
 public:
  Christoffel() = default;
  explicit Christoffel(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
  double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::size_t index(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * n_ + i) * n_ + j;
  }

  int n_ = 0;
  std::vector<double> data_;
};

}  // namespace jetgh
