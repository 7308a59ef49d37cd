#pragma once

// Iterated tangent bundles, the recursive Sasaki metric, unit-bundle sampling
// and jet lifts of embeddings.
//
// Coordinate convention: a point of T^l M has 2^l blocks of n chart
// coordinates. Block b (a bitmask) carries bit j-1 when it lies in the fiber
// of the level-j tangent bundle, so the first half of the coordinates is the
// base point in T^{l-1} M and the second half is the tangent vector there.
// The human-readable label of block b lists bits level by level ("", "0",
// "1", "00", "10", ...), appending one character per level.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "jetgh/geometry.hpp"
#include "jetgh/jet.hpp"
#include "jetgh/linalg.hpp"
#include "jetgh/point_cloud.hpp"

namespace jetgh {

class JetPoint {
 public:
  JetPoint(int order, int base_dim, Vec coords);
  static JetPoint at_base(const Vec& p) { return JetPoint(0, static_cast<int>(p.size()), p); }

  int order() const { return order_; }
  int base_dim() const { return base_dim_; }
  int blocks() const { return 1 << order_; }
  const Vec& coords() const { return coords_; }
  Vec block(int b) const { return coords_.segment(static_cast<Eigen::Index>(b) * base_dim_, base_dim_); }

  // pi_l: the point of T^{l-1} M this vector is attached to.
  JetPoint base() const;
  // The tangent vector part, expressed in T^{l-1} M coordinates.
  Vec fiber() const;

  static std::string block_label(int b, int order);

 private:
  int order_;
  int base_dim_;
  Vec coords_;
};

// g_S^l on T^l M, built recursively from g_S^{l-1}. Level 0 is the chart
// metric itself.
class SasakiMetric {
 public:
  explicit SasakiMetric(MetricChart base, double fd_step = kDefaultFdStep);

  const MetricChart& base() const { return base_; }
  int point_dim(int level) const { return (1 << level) * base_.dim(); }

  // Matrix of g_S^level at a point of T^level M. With G = g_S^{l-1}(x),
  // K^k_i = Gamma^k_ij(x) xi^j and a tangent (a, b) split as horizontal a and
  // vertical b + K a, the matrix is [[G + K^T G K, K^T G], [G K, G]].
  Mat matrix(int level, const Vec& point) const;

  // Levi-Civita symbols of g_S^level; level 0 defers to the chart, higher
  // levels use central differences of matrix().
  Christoffel christoffel(int level, const Vec& point) const;

  // (g_S^l)_{v1}(v2, v3) with l = v1.order() >= 1.
  double eval(const JetPoint& v1, const Vec& v2, const Vec& v3) const;

  // Vertical component of a tangent vector v at v1 (identified with a vector
  // of T^{l-1} M).
  Vec vertical_part(const JetPoint& v1, const Vec& v) const;

 private:
  MetricChart base_;
  double step_;
};

// A C^{k+1} map from a chart into E^m (or into the Lorentz ambient), evaluated
// on jets so that nested differentials of any order up to max_order come for
// free.
class EmbeddingMap {
 public:
  using JetFn = std::function<void(std::span<const Jet> x, std::span<Jet> y)>;

  EmbeddingMap(MetricChart source, int target_dim, JetFn f, int max_order = Jet::kMaxOrder,
               CloudMetric target_metric = {});

  const MetricChart& source() const { return source_; }
  int target_dim() const { return target_dim_; }
  int max_order() const { return max_order_; }
  const CloudMetric& target_metric() const { return target_metric_; }
  // Gram matrix of the ambient: identity, or diag(-1, 1, ..., 1) for Lorentz.
  Mat ambient_gram() const;

  Vec value(const Vec& p) const;
  Mat jacobian(const Vec& p) const;

  // Mixed directional derivative D^j f(p)(dirs[0], ..., dirs[j-1]).
  Vec directional(const Vec& p, std::span<const Vec> dirs) const;

  // d^l f at a point of T^l M; the result is a point of T^l E^m.
  JetPoint nested_differential(const JetPoint& p) const;

 private:
  MetricChart source_;
  int target_dim_;
  JetFn f_;
  int max_order_;
  CloudMetric target_metric_;
};

// ||J^T G_amb J - g||_F at p.
double isometry_residual(const EmbeddingMap& f, const Vec& p);
double max_isometry_residual(const EmbeddingMap& f, const std::vector<Vec>& points);

struct SampleCounts {
  int base = 64;         // base points (per axis for tensor grids)
  int fiber_radii = 2;   // non-zero radii per intermediate fiber ball
  int fiber_dirs = 8;    // directions per intermediate fiber (2 in one dimension)
  int top_dirs = 16;     // unit directions of the top-level vector
};

// Finite sample of S^l M with intermediate fibers truncated to g_S-norm <= R.
struct UnitBundleSample {
  int order = 0;
  double fiber_cap = 0.0;
  SampleCounts counts;
  std::uint64_t seed = 0;
  std::vector<JetPoint> points;
};

// Quasi-uniform unit vectors of R^d: +-1 for d = 1, equally spaced angles for
// d = 2, a Fibonacci lattice for d = 3, seeded Gaussian draws beyond that.
std::vector<Vec> unit_directions(int d, int count, std::uint64_t seed);

// order == 0 returns the base grid alone (an image sample).
UnitBundleSample unit_bundle_sample(const SasakiMetric& metric, int order,
                                    const SampleCounts& counts, double fiber_cap,
                                    std::uint64_t seed = 0);

// A sample of d^l f(S^l M) in flat E^{2^l m}.
struct LiftedCloud {
  int order = 0;
  int ambient_dim = 0;
  PointCloud cloud;
};

LiftedCloud lift_cloud(const EmbeddingMap& f, const UnitBundleSample& sample);

// Column names "b<label>_x<i>" for a lifted cloud's CSV header.
std::vector<std::string> lifted_column_names(int order, int ambient_dim);

}  // namespace jetgh
