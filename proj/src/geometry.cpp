#include "jetgh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include <Eigen/Cholesky>

#include "jetgh/errors.hpp"

namespace jetgh {

MetricChart::MetricChart(std::string label, std::vector<Axis> domain, MetricFn metric,
                         ChristoffelFn analytic_christoffel, SamplerFn base_sampler)
    : label_(std::move(label)),
      domain_(std::move(domain)),
      metric_(std::move(metric)),
      christoffel_(std::move(analytic_christoffel)),
      sampler_(std::move(base_sampler)) {
  if (domain_.empty()) throw ConfigError("MetricChart '" + label_ + "': empty domain");
  for (const Axis& a : domain_) {
    if (!(a.lo < a.hi)) throw ConfigError("MetricChart '" + label_ + "': axis with lo >= hi");
    if (a.periodic && !std::isfinite(a.period()))
      throw ConfigError("MetricChart '" + label_ + "': periodic axis needs a finite period");
  }
}

Vec MetricChart::wrap(const Vec& p) const {
  if (p.size() != dim()) {
    std::ostringstream os;
    os << "chart '" << label_ << "' expects " << dim() << " coordinates, got " << p.size();
    throw ValidationError(os.str());
  }
  Vec q = p;
  for (int i = 0; i < dim(); ++i) {
    const Axis& a = domain_[i];
    if (!std::isfinite(q[i])) throw DomainError("chart '" + label_ + "': non-finite coordinate");
    if (a.periodic) {
      double t = std::fmod(q[i] - a.lo, a.period());
      if (t < 0.0) t += a.period();
      q[i] = a.lo + t;
    } else if (q[i] < a.lo || q[i] > a.hi) {
      std::ostringstream os;
      os << "chart '" << label_ << "': coordinate " << i << " = " << q[i] << " outside [" << a.lo
         << ", " << a.hi << "]";
      throw DomainError(os.str());
    }
  }
  return q;
}

bool MetricChart::contains(const Vec& p) const {
  if (p.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const Axis& a = domain_[i];
    if (!std::isfinite(p[i])) return false;
    if (!a.periodic && (p[i] < a.lo || p[i] > a.hi)) return false;
  }
  return true;
}

Mat MetricChart::metric(const Vec& p) const { return metric_(wrap(p)); }

Christoffel MetricChart::christoffel(const Vec& p, double step) const {
  if (christoffel_) return christoffel_(wrap(p));
  return christoffel_fd(p, step);
}

Christoffel MetricChart::christoffel_fd(const Vec& p, double step) const {
  const Vec q = wrap(p);
  auto field = [this](const Vec& x) { return metric(x); };
  return levi_civita(metric_(q), central_difference(field, q, step));
}

std::vector<Vec> MetricChart::base_grid(int count) const {
  if (count < 1) throw ConfigError("base grid needs a positive count");
  if (sampler_) return sampler_(count);

  std::vector<std::vector<double>> axes;
  for (const Axis& a : domain_) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi))
      throw ConfigError("chart '" + label_ + "': cannot grid an unbounded axis");
    std::vector<double> values(count);
    for (int i = 0; i < count; ++i) {
      values[i] = a.periodic ? a.lo + a.period() * i / count
                             : a.lo + (a.hi - a.lo) * (i + 0.5) / count;
    }
    axes.push_back(std::move(values));
  }

  std::vector<Vec> grid;
  std::vector<int> idx(dim(), 0);
  while (true) {
    Vec p(dim());
    for (int i = 0; i < dim(); ++i) p[i] = axes[i][idx[i]];
    grid.push_back(std::move(p));
    int ax = dim() - 1;
    while (ax >= 0 && ++idx[ax] == count) idx[ax--] = 0;
    if (ax < 0) break;
  }
  return grid;
}

Christoffel levi_civita(const Mat& g, const std::vector<Mat>& dg) {
  const int n = static_cast<int>(g.rows());
  Eigen::LDLT<Mat> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 0.0) {
    throw NumericError("Christoffel evaluation: metric matrix is singular or indefinite");
  }
  const Mat ginv = ldlt.solve(Mat::Identity(n, n));
  Christoffel gamma(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      // lowered symbol [ij, l]
      Vec lowered(n);
      for (int l = 0; l < n; ++l) lowered[l] = 0.5 * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
      const Vec raised = ginv * lowered;
      for (int k = 0; k < n; ++k) {
        gamma(k, i, j) = raised[k];
        gamma(k, j, i) = raised[k];
      }
    }
  }
  return gamma;
}

std::vector<Mat> central_difference(const std::function<Mat(const Vec&)>& field, const Vec& p,
                                    double step) {
  std::vector<Mat> d;
  d.reserve(p.size());
  for (int l = 0; l < p.size(); ++l) {
    Vec plus = p, minus = p;
    plus[l] += step;
    minus[l] -= step;
    d.push_back((field(plus) - field(minus)) / (2.0 * step));
  }
  return d;
}

MetricChart flat_chart(int n, double lo, double hi) {
  if (n < 1) throw ConfigError("flat chart needs n >= 1");
  std::vector<Axis> domain(n, Axis{lo, hi, false});
  return MetricChart(
      "E^" + std::to_string(n), std::move(domain), [n](const Vec&) { return Mat::Identity(n, n); },
      [n](const Vec&) { return Christoffel(n); });
}

MetricChart circle_chart(double r) {
  if (!(r > 0.0)) throw ConfigError("circle chart needs r > 0");
  const double two_pi = 2.0 * std::numbers::pi;
  return MetricChart(
      "S^1(r=" + std::to_string(r) + ")", {Axis{0.0, two_pi, true}},
      [r](const Vec&) { return Mat::Constant(1, 1, r * r); }, [](const Vec&) { return Christoffel(1); });
}

MetricChart sphere_chart(double r) {
  if (!(r > 0.0)) throw ConfigError("sphere chart needs r > 0");
  const double pi = std::numbers::pi;
  auto metric = [r](const Vec& p) {
    const double s = std::sin(p[0]);
    Mat g = Mat::Zero(2, 2);
    g(0, 0) = r * r;
    g(1, 1) = r * r * s * s;
    return g;
  };
  auto christoffel = [](const Vec& p) {
    const double s = std::sin(p[0]), c = std::cos(p[0]);
    Christoffel gamma(2);
    gamma(0, 1, 1) = -s * c;
    gamma(1, 0, 1) = c / s;
    gamma(1, 1, 0) = c / s;
    return gamma;
  };
  auto fibonacci = [pi](int count) {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    std::vector<Vec> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      Vec p(2);
      p[0] = std::acos(z);
      p[1] = std::fmod(golden * i, 2.0 * pi);
      pts.push_back(p);
    }
    return pts;
  };
  return MetricChart("S^2(r=" + std::to_string(r) + ")",
                     {Axis{0.0, pi, false}, Axis{0.0, 2.0 * pi, true}}, metric, christoffel,
                     fibonacci);
}

MetricChart polar_plane_chart(double rho_lo, double rho_hi) {
  if (!(rho_lo > 0.0 && rho_lo < rho_hi)) throw ConfigError("polar chart needs 0 < lo < hi");
  return MetricChart("E^2(polar)",
                     {Axis{rho_lo, rho_hi, false}, Axis{0.0, 2.0 * std::numbers::pi, true}},
                     [](const Vec& p) {
                       Mat g = Mat::Identity(2, 2);
                       g(1, 1) = p[0] * p[0];
                       return g;
                     });
}

Mat LorentzAmbient::gram() const {
  Mat g = Mat::Identity(dim(), dim());
  g(0, 0) = -1.0;
  return g;
}

double LorentzAmbient::inner(const Vec& p, const Vec& q) const {
  if (p.size() != dim() || q.size() != dim())
    throw ValidationError("LorentzAmbient: vector dimension does not match the ambient");
  return lorentz_inner(p, q);
}

double lorentz_inner(const Vec& p, const Vec& q) {
  if (p.size() != q.size()) throw ValidationError("lorentz_inner: dimension mismatch");
  if (p.size() < 1) throw ValidationError("lorentz_inner: empty vectors");
  return -p[0] * q[0] + p.tail(p.size() - 1).dot(q.tail(q.size() - 1));
}

bool on_hyperboloid(const Vec& p, double rt, double tol) {
  if (p.size() < 2 || !(p[0] > 0.0)) return false;
  const double scale = std::max(rt * rt, p[0] * p[0]);
  return std::abs(lorentz_inner(p, p) + rt * rt) <= tol * scale;
}

double hyperbolic_distance(const Vec& p, const Vec& q, double rt, double tol) {
  if (!(rt > 0.0)) throw ValidationError("hyperbolic_distance: curvature radius must be positive");
  if (p.size() != q.size()) throw ValidationError("hyperbolic_distance: dimension mismatch");
  if (!on_hyperboloid(p, rt, tol) || !on_hyperboloid(q, rt, tol))
    throw ValidationError("hyperbolic_distance: point not on the hyperboloid");
  return hyperbolic_distance_unchecked(p.data(), q.data(), static_cast<int>(p.size()), rt);
}

double hyperbolic_distance_unchecked(const double* p, const double* q, int dim, double rt) {
  // cosh(d / rt) = -<p,q>_L / rt^2 = 1 + |p - q|_L^2 / (2 rt^2) on the hyperboloid; the
  // chord form keeps coincident and near-coincident points exact. The Lorentz
  // chord length is clamped at 0, the counterpart of clamping arccosh at 1.
  double chord2 = -(p[0] - q[0]) * (p[0] - q[0]);
  for (int i = 1; i < dim; ++i) chord2 += (p[i] - q[i]) * (p[i] - q[i]);
  return 2.0 * rt * std::asinh(std::sqrt(std::max(0.0, chord2)) / (2.0 * rt));
}

Mat orthonormal_frame(const Mat& g) {
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success)
    throw NumericError("orthonormal_frame: metric is not positive definite");
  const Mat l = llt.matrixL();
  return l.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(g.rows(), g.cols()));
}

}  // namespace jetgh
