#pragma once

#include <functional>
#include <span>
#include <vector>

#include "jetgh/jet.hpp"

namespace jetgh {

// Arc-length reparametrization of a closed curve c: [0, 2 pi) -> E^m.
//
// Cumulative length is tabulated on equal parameter panels with Gauss-Legendre
// quadrature. The parameter t(s) is located by bisection in the table and
// polished by Newton's method; its jet coefficients come from inverting
// S(t0 + z) = s0 + sum_j v^(j-1)(t0) z^j / j! exactly, so derivatives of the
// reparametrized curve carry no interpolation error.
class ArcLengthCurve {
 public:
  // Writes c(t) and c'(t) for a jet-valued parameter.
  using CurveFn = std::function<void(const Jet& t, std::span<Jet> position, std::span<Jet> velocity)>;

  ArcLengthCurve(int dim, CurveFn curve, int panels = 4096);

  int dim() const { return dim_; }
  int panels() const { return static_cast<int>(cumulative_.size()) - 1; }
  double length() const { return cumulative_.back(); }

  double speed(double t) const;
  // S(t) for t in [0, 2 pi].
  double arc_length_at(double t) const;
  // t(s) for any real s (extended periodically: t(s + L) = t(s) + 2 pi).
  double parameter_at(double s) const;
  Jet parameter_jet(const Jet& s) const;

  // c(t(s)); |d/ds| of the result is 1 identically.
  void evaluate(const Jet& s, std::span<Jet> out) const;

 private:
  Jet speed_jet(const Jet& t) const;
  double panel_integral(double a, double b) const;

  int dim_;
  CurveFn curve_;
  double panel_width_;
  std::vector<double> cumulative_;
};

}  // namespace jetgh
