#pragma once

// Truncated multivariate dual numbers for iterated tangent maps.
//
// A Jet of order l is an element of R[e_1, ..., e_l] / (e_1^2, ..., e_l^2):
// 2^l coefficients indexed by a bitmask S, the coefficient of prod_{j in S} e_j.
// Evaluating a smooth map on jets whose coefficient S holds block S of a point
// of T^l M yields exactly block S of the image under d^l f, so nesting
// tangent functors reduces to ordinary arithmetic on this type.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace jetgh {

class Jet {
 public:
  static constexpr int kMaxOrder = 3;
  static constexpr int kMaxTerms = 1 << kMaxOrder;

  constexpr Jet() = default;
  // Implicit so that literals mix freely with jets in user formulas.
  constexpr Jet(double value) { c_[0] = value; }  // NOLINT(google-explicit-constructor)

  static Jet constant(double value, int order) {
    Jet j(value);
    j.set_order(order);
    return j;
  }

  // Coefficients in bitmask order; size must be 2^order.
  static Jet from_coefficients(std::span<const double> coeffs, int order) {
    Jet j;
    j.set_order(order);
    if (coeffs.size() != static_cast<std::size_t>(j.terms()))
      throw std::invalid_argument("Jet: coefficient count must be 2^order");
    for (int s = 0; s < j.terms(); ++s) j.c_[s] = coeffs[s];
    return j;
  }

  int order() const { return order_; }
  int terms() const { return 1 << order_; }
  double value() const { return c_[0]; }
  double operator[](unsigned mask) const { return c_[mask]; }
  double& coeff(unsigned mask) { return c_[mask]; }

  // Apply a scalar function given its derivatives g^(j)(value()), j = 0..order.
  // Uses g(a + h) = sum_j g^(j)(a) h^j / j!, exact because h^(order+1) = 0.
  Jet compose(std::span<const double> derivs) const {
    Jet h = *this;
    h.c_[0] = 0.0;
    Jet result = constant(derivs[0], order_);
    Jet power = constant(1.0, order_);
    double factorial = 1.0;
    for (int j = 1; j <= order_; ++j) {
      power = power * h;
      factorial *= j;
      result += power * (derivs[j] / factorial);
    }
    return result;
  }

  Jet& operator+=(const Jet& o) {
    widen(o.order_);
    for (int s = 0; s < kMaxTerms; ++s) c_[s] += o.c_[s];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    widen(o.order_);
    for (int s = 0; s < kMaxTerms; ++s) c_[s] -= o.c_[s];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (double& v : a.c_) v = -v;
    return a;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.set_order(a.order_ > b.order_ ? a.order_ : b.order_);
    const int n = r.terms();
    for (int s = 0; s < n; ++s) {
      // Sum over submasks t of s: a_t * b_{s \ t}.
      double acc = 0.0;
      for (int t = s;; t = (t - 1) & s) {
        acc += a.c_[t] * b.c_[s ^ t];
        if (t == 0) break;
      }
      r.c_[s] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

  Jet reciprocal() const {
    const double x = value();
    if (x == 0.0) throw std::domain_error("Jet: division by a jet with zero value");
    std::array<double, kMaxOrder + 1> d{};
    double p = 1.0 / x;
    double sign = 1.0;
    double fact = 1.0;
    for (int j = 0; j <= order_; ++j) {
      // d^j/dx^j x^-1 = (-1)^j j! x^-(j+1)
      d[j] = sign * fact * p;
      p /= x;
      sign = -sign;
      fact *= (j + 1);
    }
    return compose(d);
  }

 private:
  void set_order(int order) {
    if (order < 0 || order > kMaxOrder) throw std::invalid_argument("Jet: order out of range");
    order_ = order;
  }
  void widen(int other) {
    if (other > order_) order_ = other;
  }

  int order_ = 0;
  // Coefficients past terms() stay zero so mixed-order arithmetic needs no
  // special casing.
  std::array<double, kMaxTerms> c_{};
};

inline Jet sin(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  const std::array<double, 4> d{s, c, -s, -c};
  return x.compose(d);
}

inline Jet cos(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  const std::array<double, 4> d{c, -s, -c, s};
  return x.compose(d);
}

inline Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  const std::array<double, 4> d{e, e, e, e};
  return x.compose(d);
}

inline Jet log(const Jet& x) {
  const double v = x.value();
  if (v <= 0.0) throw std::domain_error("Jet: log of non-positive value");
  const std::array<double, 4> d{std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v)};
  return x.compose(d);
}

// Real power x^p for x > 0 (or integral p).
inline Jet pow(const Jet& x, double p) {
  const double v = x.value();
  std::array<double, Jet::kMaxOrder + 1> d{};
  double coef = 1.0;
  for (int j = 0; j <= x.order(); ++j) {
    d[j] = coef * std::pow(v, p - j);
    coef *= (p - j);
  }
  return x.compose(d);
}

inline Jet sqrt(const Jet& x) {
  if (x.value() <= 0.0) throw std::domain_error("Jet: sqrt needs a positive value");
  return pow(x, 0.5);
}

inline Jet asinh(const Jet& x) {
  const double v = x.value();
  const double q = 1.0 + v * v;
  const std::array<double, 4> d{std::asinh(v), std::pow(q, -0.5), -v * std::pow(q, -1.5),
                                (2.0 * v * v - 1.0) * std::pow(q, -2.5)};
  return x.compose(d);
}

}  // namespace jetgh
