#include "jetgh/jet_lift.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "jetgh/errors.hpp"

namespace jetgh {

JetPoint::JetPoint(int order, int base_dim, Vec coords)
    : order_(order), base_dim_(base_dim), coords_(std::move(coords)) {
  if (order < 0) throw ValidationError("JetPoint: negative order");
  if (base_dim < 1) throw ValidationError("JetPoint: base dimension must be positive");
  if (coords_.size() != static_cast<Eigen::Index>(base_dim) << order)
    throw ValidationError("JetPoint: expected 2^order * n coordinates");
}

JetPoint JetPoint::base() const {
  if (order_ == 0) throw ValidationError("JetPoint: an order-0 point has no projection");
  const Eigen::Index half = coords_.size() / 2;
  return JetPoint(order_ - 1, base_dim_, coords_.head(half));
}

Vec JetPoint::fiber() const {
  if (order_ == 0) throw ValidationError("JetPoint: an order-0 point has no fiber");
  return coords_.tail(coords_.size() / 2);
}

std::string JetPoint::block_label(int b, int order) {
  std::string label;
  for (int j = 0; j < order; ++j) label.push_back((b >> j) & 1 ? '1' : '0');
  return label;
}

SasakiMetric::SasakiMetric(MetricChart base, double fd_step) : base_(std::move(base)), step_(fd_step) {
  if (!(fd_step > 0.0)) throw ConfigError("SasakiMetric: finite-difference step must be positive");
}

Mat SasakiMetric::matrix(int level, const Vec& point) const {
  if (level < 0) throw ValidationError("SasakiMetric: negative level");
  if (point.size() != point_dim(level))
    throw ValidationError("SasakiMetric: point has " + std::to_string(point.size()) +
                          " coordinates, level " + std::to_string(level) + " needs " +
                          std::to_string(point_dim(level)));
  if (level == 0) return base_.metric(point);

  const int n = point_dim(level - 1);
  const Vec x = point.head(n);
  const Vec xi = point.tail(n);
  const Mat g = matrix(level - 1, x);
  const Christoffel gamma = christoffel(level - 1, x);

  Mat k = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) k(a, i) += gamma(a, i, j) * xi[j];

  const Mat gk = g * k;
  Mat s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = g + k.transpose() * gk;
  s.topRightCorner(n, n) = gk.transpose();
  s.bottomLeftCorner(n, n) = gk;
  s.bottomRightCorner(n, n) = g;
  // Symmetrize away round-off in the K^T G K product.
  return 0.5 * (s + s.transpose());
}

Christoffel SasakiMetric::christoffel(int level, const Vec& point) const {
  if (level == 0) return base_.christoffel(point, step_);
  auto field = [this, level](const Vec& x) { return matrix(level, x); };
  return levi_civita(matrix(level, point), central_difference(field, point, step_));
}

double SasakiMetric::eval(const JetPoint& v1, const Vec& v2, const Vec& v3) const {
  if (v1.order() < 1) throw ValidationError("sasaki_eval: the base point must have order >= 1");
  if (v1.base_dim() != base_.dim()) throw ValidationError("sasaki_eval: base dimension mismatch");
  const int dim = point_dim(v1.order());
  if (v2.size() != dim || v3.size() != dim)
    throw ValidationError("sasaki_eval: tangent vectors must have 2^l * n coordinates");
  return v2.dot(matrix(v1.order(), v1.coords()) * v3);
}

Vec SasakiMetric::vertical_part(const JetPoint& v1, const Vec& v) const {
  const int n = point_dim(v1.order() - 1);
  if (v.size() != 2 * n) throw ValidationError("vertical_part: wrong tangent dimension");
  const Vec x = v1.base().coords();
  const Vec xi = v1.fiber();
  const Christoffel gamma = christoffel(v1.order() - 1, x);
  Vec out = v.tail(n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[a] += gamma(a, i, j) * v[i] * xi[j];
  return out;
}

EmbeddingMap::EmbeddingMap(MetricChart source, int target_dim, JetFn f, int max_order,
                           CloudMetric target_metric)
    : source_(std::move(source)),
      target_dim_(target_dim),
      f_(std::move(f)),
      max_order_(max_order),
      target_metric_(target_metric) {
  if (target_dim < 1) throw ConfigError("EmbeddingMap: target dimension must be positive");
  if (max_order < 0 || max_order > Jet::kMaxOrder)
    throw ConfigError("EmbeddingMap: derivative order out of range");
}

Mat EmbeddingMap::ambient_gram() const {
  Mat g = Mat::Identity(target_dim_, target_dim_);
  if (target_metric_.kind == MetricKind::Hyperbolic) g(0, 0) = -1.0;
  return g;
}

Vec EmbeddingMap::value(const Vec& p) const {
  return nested_differential(JetPoint::at_base(p)).coords();
}

Vec EmbeddingMap::directional(const Vec& p, std::span<const Vec> dirs) const {
  const int order = static_cast<int>(dirs.size());
  if (order > max_order_)
    throw ValidationError("EmbeddingMap: derivative of order " + std::to_string(order) +
                          " exceeds the available order " + std::to_string(max_order_));
  const int n = source_.dim();
  const Vec q = source_.wrap(p);
  std::vector<Jet> x(n), y(target_dim_);
  for (int i = 0; i < n; ++i) {
    x[i] = Jet::constant(q[i], order);
    for (int j = 0; j < order; ++j) x[i].coeff(1u << j) = dirs[j][i];
  }
  f_(x, y);
  const unsigned full = (1u << order) - 1u;
  Vec out(target_dim_);
  for (int a = 0; a < target_dim_; ++a) out[a] = y[a][full];
  return out;
}

Mat EmbeddingMap::jacobian(const Vec& p) const {
  const int n = source_.dim();
  Mat j(target_dim_, n);
  for (int i = 0; i < n; ++i) {
    const Vec e = Vec::Unit(n, i);
    j.col(i) = directional(p, std::span<const Vec>(&e, 1));
  }
  return j;
}

JetPoint EmbeddingMap::nested_differential(const JetPoint& p) const {
  const int l = p.order();
  if (p.base_dim() != source_.dim())
    throw ValidationError("nested_differential: point dimension does not match the source chart");
  if (l > max_order_)
    throw ValidationError("nested_differential: order " + std::to_string(l) +
                          " exceeds the available derivative order " + std::to_string(max_order_));
  const int n = source_.dim();
  const int blocks = p.blocks();
  const Vec base = source_.wrap(p.block(0));

  std::vector<Jet> x(n), y(target_dim_);
  for (int i = 0; i < n; ++i) {
    x[i] = Jet::constant(base[i], l);
    for (int b = 1; b < blocks; ++b) x[i].coeff(b) = p.coords()[b * n + i];
  }
  f_(x, y);

  Vec out(static_cast<Eigen::Index>(blocks) * target_dim_);
  for (int b = 0; b < blocks; ++b)
    for (int a = 0; a < target_dim_; ++a) out[b * target_dim_ + a] = y[a][b];
  return JetPoint(l, target_dim_, std::move(out));
}

double isometry_residual(const EmbeddingMap& f, const Vec& p) {
  const Mat j = f.jacobian(p);
  return (j.transpose() * f.ambient_gram() * j - f.source().metric(p)).norm();
}

double max_isometry_residual(const EmbeddingMap& f, const std::vector<Vec>& points) {
  double worst = 0.0;
  for (const Vec& p : points) worst = std::max(worst, isometry_residual(f, p));
  return worst;
}

std::vector<Vec> unit_directions(int d, int count, std::uint64_t seed) {
  if (d < 1) throw ConfigError("unit_directions: dimension must be positive");
  std::vector<Vec> dirs;
  if (d == 1) {
    dirs.push_back(Vec::Constant(1, 1.0));
    dirs.push_back(Vec::Constant(1, -1.0));
    return dirs;
  }
  if (count < 1) throw ConfigError("unit_directions: count must be positive");
  const double pi = std::numbers::pi;
  if (d == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * pi * i / count;
      Vec v(2);
      v << std::cos(a), std::sin(a);
      dirs.push_back(v);
    }
  } else if (d == 3) {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * i;
      Vec v(3);
      v << rho * std::cos(a), rho * std::sin(a), z;
      dirs.push_back(v);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    while (static_cast<int>(dirs.size()) < count) {
      Vec v(d);
      for (int i = 0; i < d; ++i) v[i] = normal(rng);
      const double norm = v.norm();
      if (norm > 1e-12) dirs.push_back(v / norm);
    }
  }
  return dirs;
}

UnitBundleSample unit_bundle_sample(const SasakiMetric& metric, int order, const SampleCounts& counts,
                                    double fiber_cap, std::uint64_t seed) {
  if (order < 0 || order > Jet::kMaxOrder)
    throw ConfigError("unit_bundle_sample: order must lie in [0, " + std::to_string(Jet::kMaxOrder) + "]");
  if (counts.base < 1 || counts.fiber_radii < 0 || counts.fiber_dirs < 1 || counts.top_dirs < 1)
    throw ConfigError("unit_bundle_sample: sample counts must be positive");
  if (order >= 2 && !(fiber_cap > 0.0))
    throw ConfigError("unit_bundle_sample: fiber cap R must be positive");

  UnitBundleSample sample;
  sample.order = order;
  sample.fiber_cap = fiber_cap;
  sample.counts = counts;
  sample.seed = seed;

  const int n = metric.base().dim();
  std::vector<Vec> partial = metric.base().base_grid(counts.base);

  // Intermediate levels 1 .. order-1: fibers inside the g_S-ball of radius R.
  for (int level = 1; level < order; ++level) {
    const int fdim = metric.point_dim(level - 1);
    const std::vector<Vec> dirs = unit_directions(fdim, counts.fiber_dirs, seed + 7919u * level);
    std::vector<Vec> next;
    next.reserve(partial.size() * (1 + dirs.size() * counts.fiber_radii));
    for (const Vec& x : partial) {
      const Mat frame = orthonormal_frame(metric.matrix(level - 1, x));
      Vec p(2 * fdim);
      p.head(fdim) = x;
      p.tail(fdim).setZero();
      next.push_back(p);
      for (int r = 1; r <= counts.fiber_radii; ++r) {
        const double radius = fiber_cap * r / counts.fiber_radii;
        for (const Vec& d : dirs) {
          p.tail(fdim) = frame * (radius * d);
          next.push_back(p);
        }
      }
    }
    partial = std::move(next);
  }

  if (order == 0) {
    for (Vec& x : partial) sample.points.emplace_back(0, n, std::move(x));
    return sample;
  }

  const int tdim = metric.point_dim(order - 1);
  const std::vector<Vec> dirs = unit_directions(tdim, counts.top_dirs, seed + 104729u * order);
  sample.points.reserve(partial.size() * dirs.size());
  for (const Vec& x : partial) {
    const Mat g = metric.matrix(order - 1, x);
    const Mat frame = orthonormal_frame(g);
    Vec p(2 * tdim);
    p.head(tdim) = x;
    for (const Vec& d : dirs) {
      Vec w = frame * d;
      w /= std::sqrt(w.dot(g * w));
      p.tail(tdim) = w;
      sample.points.emplace_back(order, n, p);
    }
  }
  return sample;
}

LiftedCloud lift_cloud(const EmbeddingMap& f, const UnitBundleSample& sample) {
  if (sample.order > f.max_order())
    throw ValidationError("lift_cloud: sample order exceeds the embedding's derivative order");
  if (sample.order > 0 && f.target_metric().kind != MetricKind::Euclidean)
    throw ValidationError("lift_cloud: only Euclidean targets have a flat lifted space");
  LiftedCloud lifted;
  lifted.order = sample.order;
  lifted.ambient_dim = f.target_dim();
  lifted.cloud = PointCloud(f.target_dim() << sample.order, f.target_metric());
  lifted.cloud.reserve(sample.points.size());
  for (const JetPoint& p : sample.points) {
    const JetPoint image = f.nested_differential(p);
    lifted.cloud.add(std::span<const double>(image.coords().data(), image.coords().size()));
  }
  return lifted;
}

std::vector<std::string> lifted_column_names(int order, int ambient_dim) {
  std::vector<std::string> names;
  for (int b = 0; b < (1 << order); ++b)
    for (int i = 0; i < ambient_dim; ++i)
      names.push_back("b" + JetPoint::block_label(b, order) + "_x" + std::to_string(i));
  return names;
}

}  // namespace jetgh
