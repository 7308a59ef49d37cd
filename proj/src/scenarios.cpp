#include "jetgh/scenarios.hpp"

#include <boost/math/quadrature/trapezoidal.hpp>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "jetgh/errors.hpp"

namespace jetgh {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_positive(const char* what, double v) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ConfigError(std::string(what) + " must be positive and finite, got " + format_number(v));
}

// Builds the family for an arc-length parametrized closed curve whose source
// is S^1(r^-2), with the arc-length origin exposed as shape parameter "phase".
EmbeddingFamily arc_length_family(std::string key, std::map<std::string, double> params,
                                  std::shared_ptr<const ArcLengthCurve> curve) {
  const double r = curve->length() / (2.0 * kPi);
  auto build = [curve, r](std::span<const double> shape) {
    const double phase = shape.empty() ? 0.0 : shape[0];
    auto f = [curve, r, phase](std::span<const Jet> x, std::span<Jet> y) {
      curve->evaluate((x[0] + phase) * r, y);
    };
    return EmbeddingMap(circle_chart(r), curve->dim(), f);
  };
  EmbeddingFamily family(std::move(key), std::move(params), build,
                         {ShapeParameter{"phase", 0.0, 2.0 * kPi, 0.0, true}});
  family.info["source_radius"] = r;
  family.info["length"] = curve->length();
  return family;
}

EmbeddingFamily make_wavy(std::string key, std::map<std::string, double> params, double r1, double a,
                          long waves, int panels) {
  const double nw = static_cast<double>(waves);
  auto curve_fn = [r1, a, nw](const Jet& t, std::span<Jet> pos, std::span<Jet> vel) {
    const Jet rho = r1 + a * sin(nw * t);
    const Jet drho = (a * nw) * cos(nw * t);
    const Jet c = cos(t), s = sin(t);
    pos[0] = rho * c;
    pos[1] = rho * s;
    vel[0] = drho * c - rho * s;
    vel[1] = drho * s + rho * c;
  };
  auto curve = std::make_shared<const ArcLengthCurve>(2, curve_fn, panels);
  EmbeddingFamily family = arc_length_family(std::move(key), std::move(params), std::move(curve));
  family.info["waves"] = nw;
  family.info["amplitude"] = a;
  return family;
}

}  // namespace

double F_function(double r1, double r2, double rt) {
  if (!(r1 > 0.0) || !(r2 > 0.0) || !(rt > 0.0))
    throw ValidationError("F_function: all arguments must be positive");
  return rt * (std::asinh(r2 / rt) - std::asinh(r1 / rt));
}

EmbeddingFamily::EmbeddingFamily(std::string key, std::map<std::string, double> params, Builder build,
                                 std::vector<ShapeParameter> shape)
    : key_(std::move(key)), params_(std::move(params)), build_(std::move(build)), shape_(std::move(shape)) {
  for (const ShapeParameter& p : shape_) {
    if (!(p.lo <= p.initial && p.initial <= p.hi))
      throw ConfigError("family '" + key_ + "': shape parameter '" + p.name + "' has invalid bounds");
  }
}

std::string EmbeddingFamily::spec() const {
  std::string s = key_ + "{";
  bool first = true;
  for (const auto& [k, v] : params_) {
    if (!first) s += ",";
    s += k + "=" + format_number(v);
    first = false;
  }
  return s + "}";
}

std::vector<double> EmbeddingFamily::initial_shape() const {
  std::vector<double> v;
  for (const ShapeParameter& p : shape_) v.push_back(p.initial);
  return v;
}

EmbeddingMap EmbeddingFamily::map() const {
  const std::vector<double> shape = initial_shape();
  return build_(shape);
}

EmbeddingMap EmbeddingFamily::map(std::span<const double> shape) const {
  if (shape.size() != shape_.size())
    throw ConfigError("family '" + key_ + "': expected " + std::to_string(shape_.size()) +
                      " shape parameters");
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (!(shape_[i].lo <= shape[i] && shape[i] <= shape_[i].hi))
      throw ConfigError("family '" + key_ + "': shape parameter '" + shape_[i].name + "' = " +
                        format_number(shape[i]) + " out of bounds");
  }
  return build_(shape);
}

EmbeddingFamily round_family(int n, double r) {
  require_positive("round family radius r", r);
  if (n == 1) {
    auto build = [r](std::span<const double>) {
      auto f = [r](std::span<const Jet> x, std::span<Jet> y) {
        y[0] = r * cos(x[0]);
        y[1] = r * sin(x[0]);
      };
      return EmbeddingMap(circle_chart(r), 2, f);
    };
    return EmbeddingFamily("circle", {{"r", r}}, build);
  }
  if (n == 2) {
    auto build = [r](std::span<const double>) {
      auto f = [r](std::span<const Jet> x, std::span<Jet> y) {
        const Jet s = sin(x[0]);
        y[0] = r * s * cos(x[1]);
        y[1] = r * s * sin(x[1]);
        y[2] = r * cos(x[0]);
      };
      return EmbeddingMap(sphere_chart(r), 3, f);
    };
    return EmbeddingFamily("sphere", {{"r", r}}, build);
  }
  throw ConfigError("round family supports n = 1 or 2, got " + std::to_string(n));
}

EmbeddingMap hyperbolic_sphere_embedding(int n, double r, double rt) {
  require_positive("sphere radius r", r);
  require_positive("hyperboloid radius rt", rt);
  const double x0 = std::sqrt(rt * rt + r * r);
  if (n == 1) {
    auto f = [r, x0](std::span<const Jet> x, std::span<Jet> y) {
      y[0] = Jet::constant(x0, x[0].order());
      y[1] = r * cos(x[0]);
      y[2] = r * sin(x[0]);
    };
    return EmbeddingMap(circle_chart(r), 3, f, Jet::kMaxOrder, CloudMetric::hyperbolic(rt));
  }
  if (n == 2) {
    auto f = [r, x0](std::span<const Jet> x, std::span<Jet> y) {
      const Jet s = sin(x[0]);
      y[0] = Jet::constant(x0, x[0].order());
      y[1] = r * s * cos(x[1]);
      y[2] = r * s * sin(x[1]);
      y[3] = r * cos(x[0]);
    };
    return EmbeddingMap(sphere_chart(r), 4, f, Jet::kMaxOrder, CloudMetric::hyperbolic(rt));
  }
  throw ConfigError("hyperbolic sphere embedding supports n = 1 or 2, got " + std::to_string(n));
}

EmbeddingFamily hyperbolic_sphere_family(int n, double r, double rt) {
  // Validate eagerly so parse errors surface at construction.
  (void)hyperbolic_sphere_embedding(n, r, rt);
  return EmbeddingFamily("hyp_sphere", {{"n", static_cast<double>(n)}, {"r", r}, {"rt", rt}},
                         [n, r, rt](std::span<const double>) { return hyperbolic_sphere_embedding(n, r, rt); });
}

double wavy_length(double r1, double a, long waves) {
  // Substituting phi = N theta folds the N periods onto one; the periodic
  // trapezoidal rule converges geometrically for this analytic integrand.
  const double an = a * static_cast<double>(waves);
  auto integrand = [r1, a, an](double phi) {
    const double rho = r1 + a * std::sin(phi);
    const double drho = an * std::cos(phi);
    return std::sqrt(rho * rho + drho * drho);
  };
  return boost::math::quadrature::trapezoidal(integrand, 0.0, 2.0 * kPi, 1e-15, 30);
}

EmbeddingFamily build_wavy_circle(double r1, double r2, double eps, const WavyOptions& opts) {
  require_positive("wavy r1", r1);
  require_positive("wavy r2", r2);
  require_positive("wavy eps", eps);
  if (r2 < r1) throw ConfigError("wavy circle needs r2 >= r1");
  if (eps >= r1) throw ConfigError("wavy circle needs eps < r1");

  const double target = 2.0 * kPi * r2;
  const double a_max = opts.amplitude_fraction * eps;
  auto reaches = [&](long n) { return wavy_length(r1, a_max, n) >= target; };

  // sqrt(rho^2 + rho'^2) <= rho + |rho'| bounds the length by 2 pi (r1 + a) + 4 a N.
  const auto max_waves = static_cast<double>(opts.max_waves);
  if (2.0 * kPi * (r1 + a_max) + 4.0 * a_max * max_waves < target)
    throw ConstructionError("wavy circle: no wave count up to " + std::to_string(opts.max_waves) +
                            " reaches length 2 pi r2 inside the eps-annulus");

  long waves = 1;
  if (!reaches(1)) {
    long lo = 1, hi = 2;
    while (!reaches(hi)) {
      if (hi >= opts.max_waves)
        throw ConstructionError("wavy circle: no wave count up to " + std::to_string(opts.max_waves) +
                                " reaches length 2 pi r2 inside the eps-annulus");
      lo = hi;
      hi = std::min(hi * 2, opts.max_waves);
    }
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      (reaches(mid) ? hi : lo) = mid;
    }
    waves = hi;
  }

  double lo = 0.0, hi = a_max;
  while (hi - lo > opts.bisection_tol) {
    const double mid = 0.5 * (lo + hi);
    (wavy_length(r1, mid, waves) < target ? lo : hi) = mid;
  }
  const double a = 0.5 * (lo + hi);

  const long panel_count = std::max<long>(opts.min_panels, opts.panels_per_wave * waves);
  return make_wavy("wavy", {{"r1", r1}, {"r2", r2}, {"eps", eps}}, r1, a, waves,
                   static_cast<int>(panel_count));
}

EmbeddingFamily wavy_curve(double r1, double a, long waves, int panels) {
  require_positive("wavy r1", r1);
  if (!(a >= 0.0) || a >= r1) throw ConfigError("wavy amplitude must lie in [0, r1)");
  if (waves < 1) throw ConfigError("wavy wave count must be at least 1");
  return make_wavy("wavy_curve", {{"r1", r1}, {"a", a}, {"waves", static_cast<double>(waves)}}, r1, a,
                   waves, panels);
}

EmbeddingFamily double_wind_curve(double r1, double delta) {
  require_positive("double_wind r1", r1);
  require_positive("double_wind delta", delta);
  if (delta >= r1) throw ConfigError("double_wind needs delta < r1");
  const double h = 0.9 * delta;
  auto curve_fn = [r1, h](const Jet& t, std::span<Jet> pos, std::span<Jet> vel) {
    const Jet ring = r1 + h * cos(t);
    const Jet c2 = cos(2.0 * t), s2 = sin(2.0 * t);
    pos[0] = ring * c2;
    pos[1] = ring * s2;
    pos[2] = h * sin(t);
    const Jet dring = -h * sin(t);
    vel[0] = dring * c2 - 2.0 * ring * s2;
    vel[1] = dring * s2 + 2.0 * ring * c2;
    vel[2] = h * cos(t);
  };
  auto curve = std::make_shared<const ArcLengthCurve>(3, curve_fn, 4096);
  EmbeddingFamily family = arc_length_family("double_wind", {{"r1", r1}, {"delta", delta}}, curve);
  family.info["tube_radius"] = h;
  return family;
}

EmbeddingFamily parse_family(const std::string& spec) {
  static const std::regex pattern(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\{([^{}]*)\}\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, pattern))
    throw ConfigError("malformed family spec '" + spec + "' (expected name{key=value,...})");
  const std::string key = m[1];

  static const std::map<std::string, std::set<std::string>> known = {
      {"circle", {"r"}},
      {"sphere", {"r"}},
      {"wavy", {"r1", "r2", "eps"}},
      {"double_wind", {"r1", "delta"}},
      {"hyp_sphere", {"n", "r", "rt"}},
  };
  const auto it = known.find(key);
  if (it == known.end()) throw ConfigError("unknown family key '" + key + "'");

  std::map<std::string, double> params;
  std::stringstream body(m[2].str());
  std::string item;
  while (std::getline(body, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("family '" + key + "': parameter '" + item + "' is not key=value");
    std::string name = item.substr(b, eq - b);
    name.erase(name.find_last_not_of(" \t") + 1);
    const std::string text = item.substr(eq + 1);
    if (!it->second.count(name)) throw ConfigError("family '" + key + "': unknown parameter '" + name + "'");
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || std::string(end).find_first_not_of(" \t") != std::string::npos)
      throw ConfigError("family '" + key + "': parameter '" + name + "' is not a number: '" + text + "'");
    params[name] = v;
  }
  for (const std::string& required : it->second) {
    if (!params.count(required))
      throw ConfigError("family '" + key + "': missing parameter '" + required + "'");
  }

  auto as_dim = [&](double v) {
    if (v != 1.0 && v != 2.0) throw ConfigError("family '" + key + "': n must be 1 or 2");
    return static_cast<int>(v);
  };
  if (key == "circle") return round_family(1, params["r"]);
  if (key == "sphere") return round_family(2, params["r"]);
  if (key == "wavy") return build_wavy_circle(params["r1"], params["r2"], params["eps"]);
  if (key == "double_wind") return double_wind_curve(params["r1"], params["delta"]);
  return hyperbolic_sphere_family(as_dim(params["n"]), params["r"], params["rt"]);
}

}  // namespace jetgh
