#include <gtest/gtest.h>

#include <boost/math/differentiation/autodiff.hpp>
#include <cmath>

#include "jetgh/jet.hpp"

using jetgh::Jet;
namespace ad = boost::math::differentiation;

namespace {

// x0 + e1 + e2 + e3: coefficient of e1..ej is then the j-th derivative.
Jet diagonal(double x0, int order) {
  Jet x = Jet::constant(x0, order);
  for (int j = 0; j < order; ++j) x.coeff(1u << j) = 1.0;
  return x;
}

template <class F, class G>
void expect_matches_autodiff(F jet_fn, G ad_fn, double x0, double tol) {
  const auto ref = ad_fn(ad::make_fvar<double, 3>(x0));
  const Jet y = jet_fn(diagonal(x0, 3));
  EXPECT_NEAR(y[0], ref.derivative(0), tol);
  EXPECT_NEAR(y[1], ref.derivative(1), tol);
  EXPECT_NEAR(y[3], ref.derivative(2), tol);
  EXPECT_NEAR(y[7], ref.derivative(3), tol);
}

}  // namespace

TEST(JetTest, ConstantHasNoInfinitesimalPart) {
  const Jet c = Jet::constant(2.5, 3);
  EXPECT_EQ(c.order(), 3);
  EXPECT_EQ(c.terms(), 8);
  EXPECT_DOUBLE_EQ(c.value(), 2.5);
  for (unsigned s = 1; s < 8; ++s) EXPECT_EQ(c[s], 0.0);
}

TEST(JetTest, ProductFollowsLeibnizOnDistinctDirections) {
  // (a0 + a1 e1)(b0 + b2 e2) = a0 b0 + a1 b0 e1 + a0 b2 e2 + a1 b2 e1 e2
  const double ca[] = {2.0, 3.0, 0.0, 0.0};
  const double cb[] = {5.0, 0.0, 7.0, 0.0};
  const Jet p = Jet::from_coefficients(ca, 2) * Jet::from_coefficients(cb, 2);
  EXPECT_DOUBLE_EQ(p[0], 10.0);
  EXPECT_DOUBLE_EQ(p[1], 15.0);
  EXPECT_DOUBLE_EQ(p[2], 14.0);
  EXPECT_DOUBLE_EQ(p[3], 21.0);
}

TEST(JetTest, NilpotentSquareVanishes) {
  const double c[] = {0.0, 1.0};
  const Jet e = Jet::from_coefficients(c, 1);
  const Jet sq = e * e;
  EXPECT_EQ(sq[0], 0.0);
  EXPECT_EQ(sq[1], 0.0);
}

TEST(JetTest, MixedOrderArithmeticWidens) {
  const double c[] = {1.0, 2.0};
  const Jet x = Jet::from_coefficients(c, 1);
  const Jet y = x + Jet::constant(1.0, 3);
  EXPECT_EQ(y.order(), 3);
  EXPECT_DOUBLE_EQ(y[0], 2.0);
  EXPECT_DOUBLE_EQ(y[1], 2.0);
}

TEST(JetTest, ElementaryFunctionsMatchAutodiff) {
  using std::asinh, std::cos, std::exp, std::log, std::pow, std::sin, std::sqrt;
  for (double x0 : {0.3, 1.1, 2.7}) {
    expect_matches_autodiff([](const Jet& x) { return sin(x) * exp(x); },
                            [](auto x) { return sin(x) * exp(x); }, x0, 1e-12);
    expect_matches_autodiff([](const Jet& x) { return cos(x) / (1.0 + x * x); },
                            [](auto x) { return cos(x) / (1.0 + x * x); }, x0, 1e-12);
    expect_matches_autodiff([](const Jet& x) { return log(x) + sqrt(x); },
                            [](auto x) { return log(x) + sqrt(x); }, x0, 1e-12);
    expect_matches_autodiff([](const Jet& x) { return pow(x, 2.5); }, [](auto x) { return pow(x, 2.5); }, x0,
                            1e-12);
    expect_matches_autodiff([](const Jet& x) { return asinh(x / 0.7); },
                            [](auto x) { return asinh(x / 0.7); }, x0, 1e-12);
  }
}

TEST(JetTest, SecondOrderNestedDifferentialOfScalarMap) {
  // f(x) = x^3 at (x, u, a, b): d^2 f = (f, f'u, f'a, f'' u a + f' b).
  const double x = 1.3, u = 0.4, a = -0.7, b = 2.0;
  const double c[] = {x, u, a, b};
  const Jet y = [](const Jet& t) { return t * t * t; }(Jet::from_coefficients(c, 2));
  EXPECT_NEAR(y[0], x * x * x, 1e-14);
  EXPECT_NEAR(y[1], 3 * x * x * u, 1e-14);
  EXPECT_NEAR(y[2], 3 * x * x * a, 1e-14);
  EXPECT_NEAR(y[3], 6 * x * u * a + 3 * x * x * b, 1e-13);
}

TEST(JetTest, ReciprocalOfZeroThrows) {
  EXPECT_THROW(Jet::constant(0.0, 1).reciprocal(), std::domain_error);
}

TEST(JetTest, RejectsOrderBeyondMaximum) {
  const double c[16] = {};
  EXPECT_THROW(Jet::from_coefficients(c, 4), std::invalid_argument);
  EXPECT_THROW(Jet::from_coefficients(std::span<const double>(c, 3), 2), std::invalid_argument);
}
