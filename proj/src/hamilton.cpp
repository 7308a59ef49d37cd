#include "jetgh/hamilton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "jetgh/errors.hpp"
#include "jetgh/scenarios.hpp"

namespace jetgh {

namespace {

std::size_t ipow(int n, int e) {
  std::size_t v = 1;
  for (int i = 0; i < e; ++i) v *= static_cast<std::size_t>(n);
  return v;
}

std::vector<double> flatten(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<double> t(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = m(a, b);
  return t;
}

Mat evaluate_symmetric(const TensorField02& sigma, const Vec& p) {
  Mat s = sigma.eval(p);
  const int n = sigma.chart.dim();
  if (s.rows() != n || s.cols() != n)
    throw ValidationError("tensor field returned a " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                          " matrix on a " + std::to_string(n) + "-dimensional chart");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ValidationError("tensor field is not symmetric");
  return s;
}

}  // namespace

std::vector<Vec> norm_grid(const MetricChart& chart, const GridSpec& grid) {
  if (grid.per_dim < 1) throw ConfigError("grid: points per dimension must be positive");
  if (!(grid.fd_step > 0.0)) throw ConfigError("grid: finite-difference step must be positive");
  if (grid.margin < 0.0) throw ConfigError("grid: margin must be non-negative");
  const int n = chart.dim();
  std::vector<std::vector<double>> axes(n);
  for (int d = 0; d < n; ++d) {
    const Axis& ax = chart.domain()[d];
    if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi)) throw ConfigError("grid: chart axis is unbounded");
    const double lo = ax.periodic ? ax.lo : ax.lo + grid.margin;
    const double hi = ax.periodic ? ax.hi : ax.hi - grid.margin;
    if (!(hi > lo)) throw ConfigError("grid: margin leaves an empty axis");
    const double spacing = (hi - lo) / grid.per_dim;
    if (grid.fd_step >= 0.5 * spacing)
      throw ConfigError("grid too coarse for the finite-difference step: spacing " + std::to_string(spacing) +
                        " on axis " + std::to_string(d) + ", step " + std::to_string(grid.fd_step));
    for (int j = 0; j < grid.per_dim; ++j)
      axes[d].push_back(ax.periodic ? lo + spacing * j : lo + spacing * (j + 0.5));
  }
  std::vector<Vec> pts;
  std::vector<int> idx(n, 0);
  while (true) {
    Vec p(n);
    for (int d = 0; d < n; ++d) p[d] = axes[d][idx[d]];
    pts.push_back(std::move(p));
    int d = n - 1;
    while (d >= 0 && ++idx[d] == grid.per_dim) idx[d--] = 0;
    if (d < 0) break;
  }
  return pts;
}

std::vector<double> covariant_derivative(const TensorField02& sigma, const MetricChart& g, int i, const Vec& p,
                                         double fd_step) {
  const Vec q = g.wrap(p);
  if (i == 0) return flatten(evaluate_symmetric(sigma, q));
  const int n = g.dim();
  const int r = i + 1;  // rank of the tensor being differentiated
  const std::size_t inner = ipow(n, r);
  const std::vector<double> t = covariant_derivative(sigma, g, i - 1, q, fd_step);
  const Christoffel gamma = g.christoffel(q, fd_step);
  std::vector<double> out(static_cast<std::size_t>(n) * inner, 0.0);
  for (int c = 0; c < n; ++c) {
    Vec plus = q, minus = q;
    plus[c] += fd_step;
    minus[c] -= fd_step;
    const std::vector<double> tp = covariant_derivative(sigma, g, i - 1, plus, fd_step);
    const std::vector<double> tm = covariant_derivative(sigma, g, i - 1, minus, fd_step);
    double* o = out.data() + c * inner;
    for (std::size_t a = 0; a < inner; ++a) o[a] = (tp[a] - tm[a]) / (2.0 * fd_step);
    // Subtract Gamma^d_{c a_j} T_{.. d ..} for every slot j.
    for (int j = 0; j < r; ++j) {
      const std::size_t stride = ipow(n, r - 1 - j);
      for (std::size_t a = 0; a < inner; ++a) {
        const int aj = static_cast<int>((a / stride) % n);
        const std::size_t base = a - static_cast<std::size_t>(aj) * stride;
        double s = 0.0;
        for (int d = 0; d < n; ++d) s += gamma(d, c, aj) * t[base + d * stride];
        o[a] -= s;
      }
    }
  }
  return out;
}

double tensor_norm(const std::vector<double>& t, int rank, const Mat& g) {
  const Mat e = orthonormal_frame(g);
  const int n = static_cast<int>(g.rows());
  const std::size_t size = ipow(n, rank);
  if (t.size() != size) throw ValidationError("tensor_norm: component count does not match the rank");
  std::vector<double> cur = t, next(size);
  for (int j = 0; j < rank; ++j) {
    const std::size_t stride = ipow(n, rank - 1 - j);
    for (std::size_t a = 0; a < size; ++a) {
      const int bj = static_cast<int>((a / stride) % n);
      const std::size_t base = a - static_cast<std::size_t>(bj) * stride;
      double s = 0.0;
      for (int d = 0; d < n; ++d) s += cur[base + d * stride] * e(d, bj);
      next[a] = s;
    }
    std::swap(cur, next);
  }
  double s = 0.0;
  for (double v : cur) s += v * v;
  return std::sqrt(s);
}

double ck_norm(const TensorField02& sigma, const MetricChart& g, int k, const GridSpec& grid) {
  if (k < 0) throw ConfigError("ck_norm: k must be non-negative");
  if (sigma.chart.dim() != g.dim()) throw ValidationError("ck_norm: tensor field and metric live on different charts");
  std::vector<double> sup(k + 1, 0.0);
  for (const Vec& p : norm_grid(g, grid)) {
    const Mat gp = g.metric(p);
    for (int i = 0; i <= k; ++i)
      sup[i] = std::max(sup[i], tensor_norm(covariant_derivative(sigma, g, i, p, grid.fd_step), i + 2, gp));
  }
  double total = 0.0;
  for (double v : sup) total += v;
  return total;
}

ChartMap ChartMap::identity(int n) {
  return {[](const Vec& p) { return p; }, [n](const Vec&) { return Mat(Mat::Identity(n, n)); }};
}

TensorField02 pullback_metric(const MetricChart& source, const ChartMap& phi, const MetricChart& target) {
  auto eval = [phi, target](const Vec& p) -> Mat {
    const Mat j = phi.jacobian(p);
    if (std::abs(j.determinant()) < 1e-14)
      throw NumericError("pullback_metric: singular Jacobian at a grid point");
    return j.transpose() * target.metric(target.wrap(phi.map(p))) * j;
  };
  return {source, eval};
}

TensorField02 difference(const TensorField02& a, const TensorField02& b) {
  return {a.chart, [a, b](const Vec& p) -> Mat { return a.eval(p) - b.eval(p); }};
}

bool tends_to_zero(const std::vector<double>& column) {
  const std::size_t n = column.size();
  if (n < 2) return false;
  for (std::size_t i = n / 2 + 1; i < n; ++i)
    if (!(column[i] < column[i - 1])) return false;
  const double peak = *std::max_element(column.begin(), column.end());
  return column.back() <= 0.5 * peak;
}

ConvergenceReport hamilton_converges(const std::vector<std::pair<MetricChart, ChartMap>>& sequence,
                                     const MetricChart& g, int k, double tol, const GridSpec& grid) {
  ConvergenceReport report;
  report.label = "hamilton " + g.label();
  const TensorField02 reference{g, [g](const Vec& p) { return g.metric(p); }};
  std::vector<double> ck;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const auto& [gi, phi] = sequence[i];
    const TensorField02 sigma = difference(pullback_metric(g, phi, gi), reference);
    ConvergenceRecord rec;
    rec.i = static_cast<int>(i) + 1;
    rec.dgh = std::numeric_limits<double>::quiet_NaN();
    rec.ck = ck_norm(sigma, g, k, grid);
    ck.push_back(rec.ck);
    report.records.push_back(rec);
  }
  report.ck_to_zero = tends_to_zero(ck);
  report.tail_below_tol = !ck.empty() && ck.back() <= tol;
  return report;
}

ConvergenceReport equivalence_experiment(const std::vector<double>& radii, const EquivalenceConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const int dim = cfg.kind == RoundKind::Circle ? 1 : 2;
  const double r = cfg.reference_radius;
  const int k = cfg.dgh.order - 1;
  if (k < 0) throw ConfigError("equivalence: order must be at least 1");
  auto chart_of = [&](double radius) { return dim == 1 ? circle_chart(radius) : sphere_chart(radius); };

  ConvergenceReport report;
  report.label = std::string(dim == 1 ? "circle" : "sphere") + " reference r=" + std::to_string(r);
  report.has_dgh = true;
  if (radii.empty()) return report;

  const MetricChart g = chart_of(r);
  const EmbeddingFamily reference = round_family(dim, r);
  const LiftedCloud reference_lift = lift_for_dgh(reference, cfg.dgh, dim + 1);
  const TensorField02 g_field{g, [g](const Vec& p) { return g.metric(p); }};

  std::vector<double> dgh, ck;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const auto t0 = clock::now();
    ConvergenceRecord rec;
    rec.i = static_cast<int>(i) + 1;
    rec.r = radii[i];
    rec.dgh = estimate_dgh(reference_lift, round_family(dim, radii[i]), cfg.dgh).value;
    const TensorField02 sigma = difference(pullback_metric(g, ChartMap::identity(dim), chart_of(radii[i])), g_field);
    rec.ck = ck_norm(sigma, g, k, cfg.grid);
    rec.runtime_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    dgh.push_back(rec.dgh);
    ck.push_back(rec.ck);
    report.records.push_back(rec);
  }
  report.dgh_to_zero = tends_to_zero(dgh);
  report.ck_to_zero = tends_to_zero(ck);
  report.co_convergent = report.dgh_to_zero == report.ck_to_zero;
  return report;
}

}  // namespace jetgh
