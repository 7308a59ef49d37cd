#pragma once

// C^k norms of symmetric (0,2)-tensor fields measured with a background
// metric, pullbacks of metrics by chart maps, and the joint-convergence
// experiment comparing the d_GH^k estimator with C^k Hamilton convergence.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "jetgh/alignment.hpp"
#include "jetgh/geometry.hpp"

namespace jetgh {

struct TensorField02 {
  MetricChart chart;
  std::function<Mat(const Vec&)> eval;
};

struct GridSpec {
  int per_dim = 512;
  // Distance kept from both ends of every non-periodic axis.
  double margin = 0.0;
  double fd_step = kDefaultFdStep;
};

std::vector<Vec> norm_grid(const MetricChart& chart, const GridSpec& grid);

// Components of the i-th covariant derivative of sigma at p, flattened with
// the newest derivative index first (n^{2+i} entries).
std::vector<double> covariant_derivative(const TensorField02& sigma, const MetricChart& g, int i, const Vec& p,
                                         double fd_step);

// |T|_g for a covariant tensor of the given rank: every index contracted with
// a g-orthonormal frame, then the Frobenius norm.
double tensor_norm(const std::vector<double>& t, int rank, const Mat& g);

// sum_{i=0}^{k} sup over the grid of |nabla^i sigma|_g.
double ck_norm(const TensorField02& sigma, const MetricChart& g, int k, const GridSpec& grid = {});

// A diffeomorphism between charts together with its Jacobian.
struct ChartMap {
  std::function<Vec(const Vec&)> map;
  std::function<Mat(const Vec&)> jacobian;

  static ChartMap identity(int n);
};

// (phi^* g)_p = J(p)^T g(phi(p)) J(p), as a field on `source`.
TensorField02 pullback_metric(const MetricChart& source, const ChartMap& phi, const MetricChart& target);

// sigma_1 - sigma_2 on sigma_1's chart.
TensorField02 difference(const TensorField02& a, const TensorField02& b);

struct ConvergenceRecord {
  int i = 0;
  double r = 0.0;
  double dgh = 0.0;
  double ck = 0.0;
  double runtime_ms = 0.0;
};

struct ConvergenceReport {
  std::string label;
  std::vector<ConvergenceRecord> records;
  // False when only the C^k column was computed (dgh entries are NaN).
  bool has_dgh = false;
  bool dgh_to_zero = false;
  bool ck_to_zero = false;
  // Both columns tend to zero, or neither does.
  bool co_convergent = true;
  bool tail_below_tol = false;
};

// A column tends to zero when it strictly decreases over the second half of
// the records and its last value is at most half of its largest.
bool tends_to_zero(const std::vector<double>& column);

ConvergenceReport hamilton_converges(const std::vector<std::pair<MetricChart, ChartMap>>& sequence,
                                     const MetricChart& g, int k, double tol, const GridSpec& grid = {});

enum class RoundKind { Circle, Sphere };

struct EquivalenceConfig {
  RoundKind kind = RoundKind::Circle;
  double reference_radius = 1.0;
  DghConfig dgh;
  // The margin keeps sphere grids away from the coordinate poles.
  GridSpec grid{512, 0.05, kDefaultFdStep};
};

// For each r_i: estimate_dgh between round(r_i) and round(r) at order
// dgh.order, and the C^{order-1} norm of id^* g_{r_i} - g_r.
ConvergenceReport equivalence_experiment(const std::vector<double>& radii, const EquivalenceConfig& cfg);

}  // namespace jetgh
