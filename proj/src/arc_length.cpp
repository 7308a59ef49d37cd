#include "jetgh/arc_length.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "jetgh/errors.hpp"

namespace jetgh {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ArcLengthCurve::ArcLengthCurve(int dim, CurveFn curve, int panels)
    : dim_(dim), curve_(std::move(curve)), panel_width_(kTwoPi / panels) {
  if (dim < 1) throw ConfigError("ArcLengthCurve: dimension must be positive");
  if (panels < 1) throw ConfigError("ArcLengthCurve: need at least one panel");
  cumulative_.resize(panels + 1);
  cumulative_[0] = 0.0;
  for (int i = 0; i < panels; ++i)
    cumulative_[i + 1] = cumulative_[i] + panel_integral(i * panel_width_, (i + 1) * panel_width_);
  if (!(length() > 0.0) || !std::isfinite(length()))
    throw ConstructionError("ArcLengthCurve: curve has no positive finite length");
}

Jet ArcLengthCurve::speed_jet(const Jet& t) const {
  std::vector<Jet> pos(dim_), vel(dim_);
  curve_(t, pos, vel);
  Jet s2 = Jet::constant(0.0, t.order());
  for (const Jet& v : vel) s2 += v * v;
  return sqrt(s2);
}

double ArcLengthCurve::speed(double t) const { return speed_jet(Jet(t)).value(); }

double ArcLengthCurve::panel_integral(double a, double b) const {
  return boost::math::quadrature::gauss<double, 15>::integrate([this](double t) { return speed(t); }, a, b);
}

double ArcLengthCurve::arc_length_at(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= kTwoPi) return length();
  const int i = std::min(panels() - 1, static_cast<int>(t / panel_width_));
  return cumulative_[i] + panel_integral(i * panel_width_, t);
}

double ArcLengthCurve::parameter_at(double s) const {
  const double total = length();
  const double turns = std::floor(s / total);
  double r = s - turns * total;
  if (r >= total) r -= total;  // round-off at the seam
  if (r < 0.0) r = 0.0;

  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  const int i = std::clamp(static_cast<int>(it - cumulative_.begin()) - 1, 0, panels() - 1);
  const double a = i * panel_width_, b = (i + 1) * panel_width_;
  const double s_a = cumulative_[i], s_b = cumulative_[i + 1];
  double t = a + (b - a) * (r - s_a) / (s_b - s_a);
  for (int iter = 0; iter < 50; ++iter) {
    const double f = s_a + panel_integral(a, t) - r;
    const double step = f / speed(t);
    t = std::clamp(t - step, a, b);
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(t))) break;
  }
  return turns * kTwoPi + t;
}

Jet ArcLengthCurve::parameter_jet(const Jet& s) const {
  const int l = s.order();
  const double t0 = parameter_at(s.value());
  Jet t = Jet::constant(t0, l);
  if (l == 0) return t;

  // Taylor coefficients v^(j)(t0), j < l, read off the diagonal jet
  // t0 + e_1 + ... + e_{l-1}.
  std::array<double, Jet::kMaxOrder> dv{};
  {
    const int dl = l - 1;
    Jet diag = Jet::constant(t0, dl);
    for (int j = 0; j < dl; ++j) diag.coeff(1u << j) = 1.0;
    const Jet v = speed_jet(diag);
    for (int j = 0; j <= dl; ++j) dv[j] = v[(1u << j) - 1u];
  }
  if (!(dv[0] > 0.0)) throw NumericError("ArcLengthCurve: zero speed");

  Jet eta = s;
  eta.coeff(0) = 0.0;
  Jet z = eta / dv[0];
  for (int iter = 0; iter < l; ++iter) {
    Jet higher = Jet::constant(0.0, l);
    Jet power = z;
    double factorial = 1.0;
    for (int j = 2; j <= l; ++j) {
      power = power * z;
      factorial *= j;
      higher += power * (dv[j - 1] / factorial);
    }
    z = (eta - higher) / dv[0];
  }
  return t + z;
}

void ArcLengthCurve::evaluate(const Jet& s, std::span<Jet> out) const {
  std::vector<Jet> vel(dim_);
  curve_(parameter_jet(s), out, vel);
}

}  // namespace jetgh
