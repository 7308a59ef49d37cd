#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "jetgh/errors.hpp"
#include "jetgh/geometry.hpp"

using namespace jetgh;

namespace {

constexpr double kPi = std::numbers::pi;

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// A random point on H^2(-rt^-2) in the Lorentz ambient.
Vec random_hyperboloid_point(std::mt19937_64& rng, double rt) {
  std::normal_distribution<double> g(0.0, 1.5);
  const double x = g(rng), y = g(rng);
  return vec({std::sqrt(rt * rt + x * x + y * y), x, y});
}

}  // namespace

TEST(MetricChartTest, FlatMetricIsIdentity) {
  const MetricChart c = flat_chart(2);
  EXPECT_TRUE(c.metric(vec({0.3, -0.2})).isApprox(Mat::Identity(2, 2)));
  EXPECT_EQ(c.christoffel(vec({0.1, 0.1})).max_abs(), 0.0);
}

TEST(MetricChartTest, CircleMetricIsRadiusSquared) {
  const MetricChart c = circle_chart(1.7);
  for (double t : {0.0, 1.0, 5.5}) {
    const Mat g = c.metric(vec({t}));
    ASSERT_EQ(g.rows(), 1);
    EXPECT_DOUBLE_EQ(g(0, 0), 1.7 * 1.7);
  }
  EXPECT_EQ(c.christoffel(vec({2.0})).max_abs(), 0.0);
  EXPECT_EQ(c.christoffel_fd(vec({2.0})).max_abs(), 0.0);
}

TEST(MetricChartTest, SphereMetricAtEquator) {
  const MetricChart c = sphere_chart(2.0);
  const Mat g = c.metric(vec({kPi / 2, 0.4}));
  EXPECT_NEAR(g(0, 0), 4.0, 1e-14);
  EXPECT_NEAR(g(1, 1), 4.0, 1e-14);
  EXPECT_NEAR(g(0, 1), 0.0, 1e-14);
}

TEST(MetricChartTest, SphereChristoffelAtSixtyDegrees) {
  const MetricChart c = sphere_chart(1.0);
  const Christoffel gamma = c.christoffel(vec({kPi / 3, 0.8}));
  // Gamma^phi_{theta theta} = -sin(phi) cos(phi)
  EXPECT_NEAR(gamma(0, 1, 1), -0.4330127018922193, 1e-12);
  EXPECT_NEAR(gamma(1, 0, 1), 1.0 / std::tan(kPi / 3), 1e-12);
  EXPECT_NEAR(gamma(1, 1, 0), gamma(1, 0, 1), 0.0);
}

TEST(MetricChartTest, FiniteDifferenceChristoffelsMatchAnalyticOnSphere) {
  const MetricChart c = sphere_chart(1.3);
  for (double phi : {0.4, 1.2, 2.5}) {
    const Vec p = vec({phi, 1.0});
    const Christoffel a = c.christoffel(p);
    const Christoffel f = c.christoffel_fd(p, 1e-4);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(a(k, i, j), f(k, i, j), 1e-6);
  }
}

TEST(MetricChartTest, PolarPlaneFiniteDifferenceChristoffels) {
  // g = diag(1, rho^2): Gamma^rho_{theta theta} = -rho, Gamma^theta_{rho theta} = 1/rho.
  const MetricChart c = polar_plane_chart();
  ASSERT_FALSE(c.has_analytic_christoffel());
  for (double rho : {0.7, 1.0, 1.8}) {
    const Christoffel g = c.christoffel(vec({rho, 2.0}));
    EXPECT_NEAR(g(0, 1, 1), -rho, 1e-6);
    EXPECT_NEAR(g(1, 0, 1), 1.0 / rho, 1e-6);
    EXPECT_NEAR(g(1, 1, 0), 1.0 / rho, 1e-6);
    EXPECT_NEAR(g(0, 0, 0), 0.0, 1e-6);
    EXPECT_NEAR(g(1, 1, 1), 0.0, 1e-6);
  }
}

TEST(MetricChartTest, FiniteDifferenceChristoffelsAreMetricCompatible) {
  // d_k g_ij = Gamma^l_ki g_lj + Gamma^l_kj g_il
  const MetricChart c = polar_plane_chart();
  const double h = 1e-4;
  const Vec p = vec({1.3, 0.5});
  const Christoffel gamma = c.christoffel_fd(p, h);
  const std::vector<Mat> dg = central_difference([&](const Vec& x) { return c.metric(x); }, p, h);
  const Mat g = c.metric(p);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double rhs = 0.0;
        for (int l = 0; l < 2; ++l) rhs += gamma(l, k, i) * g(l, j) + gamma(l, k, j) * g(i, l);
        EXPECT_NEAR(dg[k](i, j), rhs, 10 * h * h);
      }
}

TEST(MetricChartTest, ChristoffelsSymmetricInLowerIndices) {
  for (const MetricChart& c : {sphere_chart(1.0), polar_plane_chart()}) {
    const Christoffel g = c.christoffel(vec({1.1, 0.3}));
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(g(k, 0, 1), g(k, 1, 0), 1e-12) << c.label();
  }
}

TEST(MetricChartTest, PeriodicAxesWrapAndBoundedAxesThrow) {
  const MetricChart s = sphere_chart(1.0);
  const Vec w = s.wrap(vec({1.0, 2 * kPi + 0.25}));
  EXPECT_NEAR(w[1], 0.25, 1e-12);
  EXPECT_THROW(s.metric(vec({4.0, 0.0})), DomainError);
  EXPECT_FALSE(s.contains(vec({-0.1, 0.0})));
  EXPECT_THROW(flat_chart(1).metric(vec({2.0})), DomainError);
}

TEST(MetricChartTest, SingularMetricRaisesNumericError) {
  const Mat g = Mat::Zero(2, 2);
  const std::vector<Mat> dg(2, Mat::Zero(2, 2));
  EXPECT_THROW(levi_civita(g, dg), NumericError);
}

TEST(MetricChartTest, OrthonormalFrameDiagonalizesMetric) {
  Mat g(2, 2);
  g << 2.0, 0.3, 0.3, 0.5;
  const Mat e = orthonormal_frame(g);
  EXPECT_TRUE((e.transpose() * g * e).isApprox(Mat::Identity(2, 2), 1e-14));
}

TEST(LorentzTest, InnerProductExamples) {
  EXPECT_DOUBLE_EQ(lorentz_inner(vec({1, 0, 0}), vec({1, 0, 0})), -1.0);
  EXPECT_DOUBLE_EQ(lorentz_inner(vec({0, 1, 0}), vec({0, 0, 1})), 0.0);
  const double rt = 0.7;
  const Vec p = vec({std::sqrt(rt * rt + 4.0), 2.0, 0.0});
  EXPECT_NEAR(lorentz_inner(p, p), -rt * rt, 1e-14);
  EXPECT_THROW(lorentz_inner(vec({1, 0}), vec({1, 0, 0})), ValidationError);
  const LorentzAmbient amb{2};
  EXPECT_EQ(amb.dim(), 3);
  EXPECT_DOUBLE_EQ(amb.gram()(0, 0), -1.0);
}

TEST(LorentzTest, HyperbolicDistanceBetweenCircleImages) {
  const Vec p = vec({std::sqrt(2.0), 1.0, 0.0});
  const Vec q = vec({std::sqrt(5.0), 2.0, 0.0});
  EXPECT_NEAR(hyperbolic_distance(p, q, 1.0), std::asinh(2.0) - std::asinh(1.0), 1e-14);
  EXPECT_NEAR(hyperbolic_distance(p, q, 1.0), 0.5622618881592672, 1e-12);
  EXPECT_EQ(hyperbolic_distance(p, p, 1.0), 0.0);
}

TEST(LorentzTest, HyperbolicDistanceAgreesWithArccoshForm) {
  std::mt19937_64 rng(3);
  for (double rt : {0.1, 1.0, 10.0}) {
    for (int i = 0; i < 50; ++i) {
      const Vec p = random_hyperboloid_point(rng, rt), q = random_hyperboloid_point(rng, rt);
      const double ref = rt * std::acosh(std::max(1.0, -lorentz_inner(p, q) / (rt * rt)));
      EXPECT_NEAR(hyperbolic_distance(p, q, rt), ref, 1e-9 * std::max(1.0, ref));
    }
  }
}

TEST(LorentzTest, HyperbolicDistanceIsSymmetricAndSatisfiesTriangle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const double rt = 0.5;
    const Vec a = random_hyperboloid_point(rng, rt), b = random_hyperboloid_point(rng, rt),
              c = random_hyperboloid_point(rng, rt);
    const double ab = hyperbolic_distance(a, b, rt), bc = hyperbolic_distance(b, c, rt),
                 ac = hyperbolic_distance(a, c, rt);
    EXPECT_EQ(ab, hyperbolic_distance(b, a, rt));
    EXPECT_LE(ac, ab + bc + 1e-9);
  }
}

TEST(LorentzTest, RejectsPointsOffTheHyperboloid) {
  EXPECT_FALSE(on_hyperboloid(vec({1.0, 1.0, 0.0}), 1.0));
  EXPECT_FALSE(on_hyperboloid(vec({-std::sqrt(2.0), 1.0, 0.0}), 1.0));
  EXPECT_TRUE(on_hyperboloid(vec({std::sqrt(2.0), 1.0, 0.0}), 1.0));
  EXPECT_THROW(hyperbolic_distance(vec({1.0, 1.0, 0.0}), vec({1.0, 0.0, 0.0}), 1.0), ValidationError);
}
