#include "jetgh/alignment.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "jetgh/errors.hpp"
#include "jetgh/hausdorff.hpp"

namespace jetgh {

namespace {

constexpr double kPi = std::numbers::pi;

Mat givens(int m, int i, int j, double angle) {
  Mat g = Mat::Identity(m, m);
  const double c = std::cos(angle), s = std::sin(angle);
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = -s;
  g(j, i) = s;
  return g;
}

int rotation_parameter_count(int m) { return m * (m - 1) / 2; }

Mat rotation_from_parameters(int m, std::span<const double> p) {
  if (m == 1) return Mat::Identity(1, 1);
  if (m == 2) return givens(2, 0, 1, p[0]);
  if (m == 3) {
    const Eigen::Vector3d v(p[0], p[1], p[2]);
    const double angle = v.norm();
    if (angle == 0.0) return Mat::Identity(3, 3);
    return Eigen::AngleAxisd(angle, v / angle).toRotationMatrix();
  }
  Mat r = Mat::Identity(m, m);
  int k = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) r = r * givens(m, i, j, p[k++]);
  return r;
}

std::vector<std::string> motion_parameter_names(int m) {
  std::vector<std::string> names;
  if (m == 2) {
    names.push_back("angle");
  } else if (m == 3) {
    names.insert(names.end(), {"axis_angle_x", "axis_angle_y", "axis_angle_z"});
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) names.push_back("givens_" + std::to_string(i) + std::to_string(j));
  }
  for (int i = 0; i < m; ++i) names.push_back("t" + std::to_string(i));
  return names;
}

// Row-major copy of a cloud after a lifted motion.
void apply_lifted(const LiftedCloud& src, const RigidMotion& g, std::vector<double>& out) {
  const int m = src.ambient_dim;
  const int blocks = 1 << src.order;
  const int dim = m * blocks;
  const std::size_t n = src.cloud.size();
  out.resize(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    const double* p = src.cloud.point(i).data();
    double* q = out.data() + i * dim;
    for (int b = 0; b < blocks; ++b) {
      Eigen::Map<const Eigen::VectorXd> x(p + b * m, m);
      Eigen::Map<Eigen::VectorXd> y(q + b * m, m);
      y.noalias() = g.rotation() * x;
      if (b == 0) y += g.translation();
    }
  }
}

PointCloud cloud_from(const std::vector<double>& rows, int dim) {
  PointCloud c(dim);
  c.reserve(rows.size() / dim);
  for (std::size_t i = 0; i < rows.size(); i += dim) c.add(std::span<const double>(rows.data() + i, dim));
  return c;
}

LiftedCloud lift_family(const EmbeddingMap& f, const DghConfig& cfg, int m) {
  if (f.target_metric().kind != MetricKind::Euclidean)
    throw ConfigError("estimate_dgh: family targets a non-Euclidean ambient (" + f.target_metric().describe() +
                      ")");
  if (f.target_dim() > m) throw ConfigError("estimate_dgh: family target exceeds the common ambient");
  const SasakiMetric metric(f.source());
  const UnitBundleSample sample = unit_bundle_sample(metric, cfg.order, cfg.counts, cfg.fiber_cap, cfg.seed);
  return pad_lifted(lift_cloud(f, sample), m);
}

double base_radius(const LiftedCloud& c) {
  double r = 0.0;
  const int m = c.ambient_dim;
  for (std::size_t i = 0; i < c.cloud.size(); ++i) {
    const double* p = c.cloud.point(i).data();
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += p[k] * p[k];
    r = std::max(r, std::sqrt(s));
  }
  return r > 0.0 ? r : 1.0;
}

void validate(const DghConfig& cfg) {
  if (cfg.order < 0 || cfg.order > Jet::kMaxOrder)
    throw ConfigError("estimate_dgh: order must lie in [0, " + std::to_string(Jet::kMaxOrder) + "]");
  if (cfg.restarts < 1) throw ConfigError("estimate_dgh: restarts must be at least 1");
  if (cfg.max_iterations < 0) throw ConfigError("estimate_dgh: max_iterations must be non-negative");
  if (!(cfg.simplex_tol > 0.0)) throw ConfigError("estimate_dgh: simplex tolerance must be positive");
  if (cfg.order >= 2 && !(cfg.fiber_cap > 0.0)) throw ConfigError("estimate_dgh: fiber cap R must be positive");
}

}  // namespace

RigidMotion::RigidMotion(Mat rotation, Vec translation)
    : rotation_(std::move(rotation)), translation_(std::move(translation)) {
  if (rotation_.rows() != rotation_.cols() || rotation_.rows() != translation_.size())
    throw ValidationError("RigidMotion: rotation and translation sizes disagree");
}

RigidMotion RigidMotion::identity(int m) { return RigidMotion(Mat::Identity(m, m), Vec::Zero(m)); }

int RigidMotion::parameter_count(int m) { return rotation_parameter_count(m) + m; }

RigidMotion RigidMotion::from_parameters(int m, std::span<const double> params, bool reflect) {
  if (m < 1) throw ValidationError("RigidMotion: dimension must be positive");
  if (static_cast<int>(params.size()) != parameter_count(m))
    throw ValidationError("RigidMotion: expected " + std::to_string(parameter_count(m)) + " parameters");
  const int nr = rotation_parameter_count(m);
  Mat r = rotation_from_parameters(m, params.first(nr));
  if (reflect) r.col(0) = -r.col(0);
  Vec t(m);
  for (int i = 0; i < m; ++i) t[i] = params[nr + i];
  return RigidMotion(std::move(r), std::move(t));
}

RigidMotion RigidMotion::inverse() const {
  Mat rt = rotation_.transpose();
  Vec t = -(rt * translation_);
  return RigidMotion(std::move(rt), std::move(t));
}

RigidMotion RigidMotion::compose(const RigidMotion& other) const {
  if (other.dim() != dim()) throw ValidationError("RigidMotion::compose: dimension mismatch");
  return RigidMotion(rotation_ * other.rotation_, rotation_ * other.translation_ + translation_);
}

LiftedCloud lifted_rigid_apply(const LiftedCloud& cloud, const RigidMotion& motion) {
  if (motion.dim() != cloud.ambient_dim)
    throw ValidationError("lifted_rigid_apply: motion acts on E^" + std::to_string(motion.dim()) +
                          " but the cloud lives over E^" + std::to_string(cloud.ambient_dim));
  std::vector<double> rows;
  apply_lifted(cloud, motion, rows);
  LiftedCloud out{cloud.order, cloud.ambient_dim, cloud_from(rows, cloud.cloud.dim())};
  out.cloud.set_metric(cloud.cloud.metric());
  return out;
}

LiftedCloud pad_lifted(const LiftedCloud& cloud, int m) {
  if (m < cloud.ambient_dim) throw ValidationError("pad_lifted: target dimension is smaller than the cloud's");
  if (m == cloud.ambient_dim) return cloud;
  const int blocks = 1 << cloud.order;
  const int k = cloud.ambient_dim;
  LiftedCloud out{cloud.order, m, PointCloud(m * blocks, cloud.cloud.metric())};
  out.cloud.reserve(cloud.cloud.size());
  std::vector<double> row(static_cast<std::size_t>(m) * blocks);
  for (std::size_t i = 0; i < cloud.cloud.size(); ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    const double* p = cloud.cloud.point(i).data();
    for (int b = 0; b < blocks; ++b) std::copy_n(p + b * k, k, row.data() + b * m);
    out.cloud.add(row);
  }
  return out;
}

RigidMotion lifted_frame(const LiftedCloud& cloud) {
  const int m = cloud.ambient_dim;
  const int blocks = 1 << cloud.order;
  const std::size_t n = cloud.cloud.size();
  if (n == 0) throw ValidationError("lifted_frame: empty cloud");

  Vec t = Vec::Zero(m);
  for (std::size_t i = 0; i < n; ++i) t += Eigen::Map<const Vec>(cloud.cloud.point(i).data(), m);
  t /= static_cast<double>(n);

  Mat q(m, m);
  int found = 0;
  auto offer = [&](Vec v) {
    const double norm = v.norm();
    if (!(norm > 1e-9)) return;
    for (int pass = 0; pass < 2; ++pass)
      for (int c = 0; c < found; ++c) v -= q.col(c).dot(v) * q.col(c);
    const double residual = v.norm();
    if (residual > 1e-6 * norm) q.col(found++) = v / residual;
  };
  for (std::size_t i = 0; i < n && found < m; ++i) {
    const double* p = cloud.cloud.point(i).data();
    offer(Eigen::Map<const Vec>(p, m) - t);
    for (int b = 1; b < blocks && found < m; ++b) offer(Eigen::Map<const Vec>(p + b * m, m));
  }
  for (int e = 0; e < m && found < m; ++e) offer(Vec::Unit(m, e));
  if (q.determinant() < 0.0) q.col(m - 1) = -q.col(m - 1);
  return RigidMotion(std::move(q), std::move(t));
}

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                          std::span<const double> steps, int max_iterations, double diameter_tol) {
  const std::size_t n = start.size();
  SimplexResult result;
  std::vector<std::vector<double>> x(n + 1, start);
  std::vector<double> fx(n + 1);
  for (std::size_t i = 0; i < n; ++i) x[i + 1][i] += steps[i];
  for (std::size_t i = 0; i <= n; ++i) {
    fx[i] = f(x[i]);
    ++result.evaluations;
  }

  std::vector<std::size_t> idx(n + 1);
  auto sort_vertices = [&] {
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
  };
  auto diameter = [&] {
    double d = 0.0;
    const std::vector<double>& best = x[idx[0]];
    for (std::size_t i = 1; i <= n; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += (x[idx[i]][k] - best[k]) * (x[idx[i]][k] - best[k]);
      d = std::max(d, std::sqrt(s));
    }
    return d;
  };
  auto along = [&](const std::vector<double>& c, const std::vector<double>& w, double coef) {
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = c[k] + coef * (w[k] - c[k]);
    return y;
  };

  sort_vertices();
  if (n == 0) result.converged = true;
  while (n > 0 && result.iterations < max_iterations) {
    if (diameter() < diameter_tol) {
      result.converged = true;
      break;
    }
    ++result.iterations;
    const std::size_t worst = idx[n], second = idx[n - 1], best = idx[0];
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += x[idx[i]][k] / static_cast<double>(n);

    std::vector<double> xr = along(centroid, x[worst], -1.0);
    const double fr = f(xr);
    ++result.evaluations;
    if (fr < fx[best]) {
      std::vector<double> xe = along(centroid, x[worst], -2.0);
      const double fe = f(xe);
      ++result.evaluations;
      if (fe < fr) {
        x[worst] = std::move(xe);
        fx[worst] = fe;
      } else {
        x[worst] = std::move(xr);
        fx[worst] = fr;
      }
    } else if (fr < fx[second]) {
      x[worst] = std::move(xr);
      fx[worst] = fr;
    } else {
      const bool outside = fr < fx[worst];
      std::vector<double> xc = outside ? along(centroid, xr, 0.5) : along(centroid, x[worst], 0.5);
      const double fc = f(xc);
      ++result.evaluations;
      if (fc < (outside ? fr : fx[worst])) {
        x[worst] = std::move(xc);
        fx[worst] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          x[idx[i]] = along(x[best], x[idx[i]], 0.5);
          fx[idx[i]] = f(x[idx[i]]);
          ++result.evaluations;
        }
      }
    }
    sort_vertices();
  }
  if (n > 0 && !result.converged && diameter() < diameter_tol) result.converged = true;
  result.x = x[idx[0]];
  result.value = fx[idx[0]];
  return result;
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("JETGH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    throw ConfigError(std::string("JETGH_THREADS must be a positive integer, got '") + env + "'");
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

LiftedCloud lift_for_dgh(const EmbeddingFamily& fam, const DghConfig& cfg, int ambient_dim) {
  validate(cfg);
  return lift_family(fam.map(), cfg, ambient_dim);
}

DghEstimate estimate_dgh(const EmbeddingFamily& fam_a, const EmbeddingFamily& fam_b, const DghConfig& cfg) {
  validate(cfg);
  const int m = std::max(fam_a.map().target_dim(), fam_b.map().target_dim());
  return estimate_dgh(lift_family(fam_a.map(), cfg, m), fam_b, cfg);
}

DghEstimate estimate_dgh(const LiftedCloud& lift_a, const EmbeddingFamily& fam_b, const DghConfig& cfg) {
  validate(cfg);
  if (lift_a.order != cfg.order) throw ConfigError("estimate_dgh: reference lift has a different order");
  const int m = lift_a.ambient_dim;
  const std::vector<ShapeParameter>& shape = fam_b.shape_parameters();
  const std::vector<double> shape0 = fam_b.initial_shape();
  const LiftedCloud lift_b0 = lift_family(fam_b.map(shape0), cfg, m);
  const int dim = lift_a.cloud.dim();

  // Work in canonical coordinates: A and B expressed in their own frames.
  const RigidMotion frame_a = lifted_frame(lift_a);
  const RigidMotion frame_b = lifted_frame(lift_b0);
  const RigidMotion to_canon_a = frame_a.inverse();
  const RigidMotion to_canon_b = frame_b.inverse();
  std::vector<double> rows;
  apply_lifted(lift_a, to_canon_a, rows);
  const PointCloud canon_a = cloud_from(rows, dim);
  apply_lifted(lift_b0, to_canon_b, rows);
  const PointCloud canon_b0 = cloud_from(rows, dim);
  const NearestNeighborIndex index_a(canon_a);
  const NearestNeighborIndex index_b0(canon_b0);
  const LiftedCloud canon_a_lift{lift_a.order, m, canon_a};
  const double scale = base_radius(canon_a_lift);

  const int np = RigidMotion::parameter_count(m);
  const int ns = static_cast<int>(shape.size());

  auto normalize_shape = [&](std::span<const double> p) {
    std::vector<double> s(ns);
    for (int i = 0; i < ns; ++i) {
      const ShapeParameter& sp = shape[i];
      double v = p[np + i];
      if (sp.periodic) {
        const double period = sp.hi - sp.lo;
        v = sp.lo + (v - sp.lo) - period * std::floor((v - sp.lo) / period);
        if (v >= sp.hi) v = sp.lo;
      } else {
        v = std::clamp(v, sp.lo, sp.hi);
      }
      s[i] = v;
    }
    return s;
  };

  auto objective = [&](std::span<const double> p, bool reflect) {
    const RigidMotion h = RigidMotion::from_parameters(m, p.first(np), reflect);
    const RigidMotion h_inv = h.inverse();
    const int blocks = 1 << lift_a.order;
    auto move = [&](const RigidMotion& g, const double* src, double* dst) {
      for (int b = 0; b < blocks; ++b) {
        Eigen::Map<const Vec> x(src + b * m, m);
        Eigen::Map<Vec> y(dst + b * m, m);
        y.noalias() = g.rotation() * x;
        if (b == 0) y += g.translation();
      }
    };
    if (ns == 0) {
      const double ba = index_a.directed_max(
          canon_b0.size(), [&](std::size_t i, double* q) { move(h, canon_b0.point(i).data(), q); });
      return index_b0.directed_max(
          canon_a.size(), [&](std::size_t i, double* q) { move(h_inv, canon_a.point(i).data(), q); }, ba);
    }
    const std::vector<double> s = normalize_shape(p);
    const LiftedCloud lift_b = lift_family(fam_b.map(s), cfg, m);
    std::vector<double> moved;
    apply_lifted(lift_b, h.compose(to_canon_b), moved);
    const PointCloud cb = cloud_from(moved, dim);
    const double ba = index_a.directed_from(cb);
    return NearestNeighborIndex(cb).directed_from(canon_a, ba);
  };

  // Starting points and simplex steps.
  std::vector<double> steps(np + ns);
  const int nr = np - m;
  for (int i = 0; i < nr; ++i) steps[i] = 0.2;
  for (int i = nr; i < np; ++i) steps[i] = 0.1 * scale;
  for (int i = 0; i < ns; ++i) steps[np + i] = 0.1 * (shape[i].hi - shape[i].lo);

  std::vector<std::vector<double>> starts(cfg.restarts, std::vector<double>(np + ns, 0.0));
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double>& x = starts[r];
    for (int i = 0; i < ns; ++i) x[np + i] = shape0[i];
    if (r == 0) continue;
    std::mt19937_64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::normal_distribution<double> gauss(0.0, 1.0);
    if (m == 3) {
      Eigen::Vector3d axis(gauss(rng), gauss(rng), gauss(rng));
      axis.normalize();
      const double a = std::abs(angle(rng));
      for (int i = 0; i < 3; ++i) x[i] = a * axis[i];
    } else {
      for (int i = 0; i < nr; ++i) x[i] = angle(rng);
    }
    for (int i = nr; i < np; ++i) x[i] = 0.1 * scale * gauss(rng);
    for (int i = 0; i < ns; ++i) {
      std::uniform_real_distribution<double> u(shape[i].lo, shape[i].hi);
      x[np + i] = u(rng);
    }
  }

  DghEstimate est;
  est.order = cfg.order;
  est.fiber_cap = cfg.fiber_cap;
  est.ambient_dim = m;
  est.size_a = lift_a.cloud.size();
  est.size_b = lift_b0.cloud.size();
  est.parameter_names = motion_parameter_names(m);
  for (const ShapeParameter& sp : shape) est.parameter_names.push_back(sp.name);
  est.raw_value = hausdorff(lift_a.cloud, lift_b0.cloud);
  est.restarts.resize(cfg.restarts);

  auto run = [&](int r) {
    RestartTrace& tr = est.restarts[r];
    tr.index = r;
    tr.reflected = cfg.allow_reflection && (r % 2 == 1);
    tr.start = starts[r];
    const bool reflect = tr.reflected;
    auto f = [&](std::span<const double> p) { return objective(p, reflect); };
    tr.start_value = f(tr.start);
    const SimplexResult res = nelder_mead(f, tr.start, steps, cfg.max_iterations, cfg.simplex_tol);
    tr.best = res.x;
    tr.value = std::min(res.value, tr.start_value);
    if (res.value > tr.start_value) tr.best = tr.start;
    tr.iterations = res.iterations;
    tr.evaluations = res.evaluations + 1;
    tr.converged = res.converged;
    tr.improved = res.value < tr.start_value;
  };

  const int threads = std::min(resolve_thread_count(cfg.threads), cfg.restarts);
  if (threads <= 1) {
    for (int r = 0; r < cfg.restarts; ++r) run(r);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int r = t; r < cfg.restarts; r += threads) run(r);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  int best = 0;
  for (int r = 1; r < cfg.restarts; ++r)
    if (est.restarts[r].value < est.restarts[best].value) best = r;
  const RestartTrace& win = est.restarts[best];
  est.best_restart = best;
  est.value = win.value;
  est.unaligned_value = est.restarts[0].start_value;
  est.best_parameters = win.best;
  for (int i = 0; i < ns; ++i) est.best_parameters[np + i] = normalize_shape(win.best)[i];
  const RigidMotion h =
      RigidMotion::from_parameters(m, std::span<const double>(win.best).first(np), win.reflected);
  const RigidMotion world = frame_a.compose(h).compose(to_canon_b);
  est.best_rotation = world.rotation();
  est.best_translation = world.translation();
  return est;
}

double embedding_ck1_norm(const EmbeddingMap& f, int order, int grid) {
  if (order < 0 || order > f.max_order())
    throw ConfigError("embedding_ck1_norm: order must lie in [0, " + std::to_string(f.max_order()) + "]");
  if (grid < 1) throw ConfigError("embedding_ck1_norm: grid must be positive");
  const MetricChart& chart = f.source();
  const int n = chart.dim();
  std::vector<double> sup(order + 1, 0.0);
  for (const Vec& p : chart.base_grid(grid)) {
    const Mat e = orthonormal_frame(chart.metric(p));
    std::vector<Vec> cols(n);
    for (int a = 0; a < n; ++a) cols[a] = e.col(a);
    sup[0] = std::max(sup[0], f.value(p).norm());
    if (order >= 1) sup[1] = std::max(sup[1], (f.jacobian(p) * e).norm());
    if (order >= 2) {
      const Christoffel gamma = chart.christoffel(p);
      const Mat jac = f.jacobian(p);
      double s = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const Vec dirs[2] = {cols[a], cols[b]};
          Vec h = f.directional(p, dirs);
          Vec g = Vec::Zero(n);
          for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) g[k] += gamma(k, i, j) * cols[a][i] * cols[b][j];
          h -= jac * g;
          s += h.squaredNorm();
        }
      }
      sup[2] = std::max(sup[2], std::sqrt(s));
    }
    if (order >= 3) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            const Vec dirs[3] = {cols[a], cols[b], cols[c]};
            s += f.directional(p, dirs).squaredNorm();
          }
      sup[3] = std::max(sup[3], std::sqrt(s));
    }
  }
  double total = 0.0;
  for (double v : sup) total += v;
  return total;
}

}  // namespace jetgh
