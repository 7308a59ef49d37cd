#pragma once

// Coordinate charts with metric and Levi-Civita evaluators, the constant
// curvature model charts, and the Lorentz ambient of the hyperboloid model.

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "jetgh/linalg.hpp"

namespace jetgh {

inline constexpr double kDefaultFdStep = 1e-4;
inline constexpr double kDefaultHyperboloidTol = 1e-8;

struct Axis {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool periodic = false;

  double period() const { return hi - lo; }
};

class MetricChart {
 public:
  using MetricFn = std::function<Mat(const Vec&)>;
  using ChristoffelFn = std::function<Christoffel(const Vec&)>;
  using SamplerFn = std::function<std::vector<Vec>(int)>;

  MetricChart(std::string label, std::vector<Axis> domain, MetricFn metric,
              ChristoffelFn analytic_christoffel = {}, SamplerFn base_sampler = {});

  int dim() const { return static_cast<int>(domain_.size()); }
  const std::string& label() const { return label_; }
  const std::vector<Axis>& domain() const { return domain_; }
  bool has_analytic_christoffel() const { return static_cast<bool>(christoffel_); }

  // Reduces periodic coordinates into [lo, hi); throws DomainError when a
  // non-periodic coordinate falls outside its interval.
  Vec wrap(const Vec& p) const;
  bool contains(const Vec& p) const;

  // Symmetric positive-definite metric matrix at p.
  Mat metric(const Vec& p) const;

  // Analytic override when present, finite differences otherwise.
  Christoffel christoffel(const Vec& p, double step = kDefaultFdStep) const;

  // Always central differences of metric(); exposed for cross-checks.
  Christoffel christoffel_fd(const Vec& p, double step = kDefaultFdStep) const;

  // Quasi-uniform base points: the chart's own sampler when supplied,
  // otherwise a tensor grid with `count` points per axis (uniform on periodic
  // axes, cell centred on bounded ones).
  std::vector<Vec> base_grid(int count) const;

 private:
  std::string label_;
  std::vector<Axis> domain_;
  MetricFn metric_;
  ChristoffelFn christoffel_;
  SamplerFn sampler_;
};

// Levi-Civita symbols Gamma^k_ij = 1/2 g^kl (d_i g_lj + d_j g_li - d_l g_ij)
// from the metric and its coordinate derivatives dg[l](i, j) = d_l g_ij.
Christoffel levi_civita(const Mat& g, const std::vector<Mat>& dg);

// Columns form a g-orthonormal basis: E^T g E = I (E = L^-T for g = L L^T).
Mat orthonormal_frame(const Mat& g);

// Central-difference partial derivatives d_l g of an arbitrary matrix field.
std::vector<Mat> central_difference(const std::function<Mat(const Vec&)>& field, const Vec& p,
                                    double step);

// Euclidean space E^n on the box [lo, hi]^n.
MetricChart flat_chart(int n, double lo = -1.0, double hi = 1.0);

// S^1(r^-2): angle chart of the round circle of radius r, metric [[r^2]].
MetricChart circle_chart(double r);

// S^2(r^-2) in polar coordinates (phi, theta), metric diag(r^2, r^2 sin^2 phi).
// The base sampler is a Fibonacci lattice so the poles are never sampled.
MetricChart sphere_chart(double r);

// E^2 in polar coordinates (rho, theta) on rho in [rho_lo, rho_hi]; a chart
// with non-trivial Christoffels and no analytic override.
MetricChart polar_plane_chart(double rho_lo = 0.5, double rho_hi = 2.0);

// g_L = -dx_1^2 + dx_2^2 + ... ; the ambient of the hyperboloid model.
struct LorentzAmbient {
  int spatial_dim = 1;  // n + 1; total dimension n + 2

  int dim() const { return spatial_dim + 1; }
  Mat gram() const;
  double inner(const Vec& p, const Vec& q) const;
};

double lorentz_inner(const Vec& p, const Vec& q);

// Whether p lies on H^{n+1}(-rt^-2) = {<p,p>_L = -rt^2, p_1 > 0} within the
// relative tolerance.
bool on_hyperboloid(const Vec& p, double rt, double tol = kDefaultHyperboloidTol);

// Intrinsic distance of H^{n+1}(-rt^-2): rt * arccosh(-<p,q>_L / rt^2), the
// argument clamped at 1.
double hyperbolic_distance(const Vec& p, const Vec& q, double rt,
                           double tol = kDefaultHyperboloidTol);

// Same formula without the membership checks, for inner loops over
// pre-validated clouds.
double hyperbolic_distance_unchecked(const double* p, const double* q, int dim, double rt);

}  // namespace jetgh
