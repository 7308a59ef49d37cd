#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "jetgh/alignment.hpp"
#include "jetgh/errors.hpp"
#include "jetgh/hausdorff.hpp"

using namespace jetgh;

namespace {

DghConfig small_config(int order, double cap) {
  DghConfig cfg;
  cfg.order = order;
  cfg.fiber_cap = cap;
  cfg.counts = SampleCounts{32, 2, 2, 2};
  cfg.restarts = 3;
  cfg.max_iterations = 300;
  cfg.threads = 1;
  return cfg;
}

// Hausdorff distance between the continuous order-2 lifts of round circles
// of radii r1 and r2 with fiber cap R, aligned concentrically.
double circle_closed_form(double r1, double r2, double cap) {
  return std::hypot(r1 - r2, cap * (1.0 / r1 - 1.0 / r2));
}

std::vector<double> random_params(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> p(RigidMotion::parameter_count(m));
  for (double& x : p) x = u(rng);
  return p;
}

double max_pair_distance_gap(const PointCloud& a, const PointCloud& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); i += 7)
    for (std::size_t j = 0; j < a.size(); j += 5)
      gap = std::max(gap, std::abs(cloud_distance(a.metric(), a.point(i).data(), a.point(j).data(), a.dim()) -
                                   cloud_distance(b.metric(), b.point(i).data(), b.point(j).data(), b.dim())));
  return gap;
}

}  // namespace

TEST(RigidMotionTest, ParametersGiveProperRotations) {
  EXPECT_EQ(RigidMotion::parameter_count(2), 3);
  EXPECT_EQ(RigidMotion::parameter_count(3), 6);
  EXPECT_EQ(RigidMotion::parameter_count(4), 10);
  std::mt19937_64 rng(1);
  for (int m : {1, 2, 3, 4, 6}) {
    for (int trial = 0; trial < 5; ++trial) {
      const std::vector<double> p = random_params(rng, m);
      for (bool reflect : {false, true}) {
        const RigidMotion g = RigidMotion::from_parameters(m, p, reflect);
        EXPECT_LE((g.rotation().transpose() * g.rotation() - Mat::Identity(m, m)).norm(), 1e-12);
        EXPECT_NEAR(g.rotation().determinant(), reflect ? -1.0 : 1.0, 1e-12);
        const RigidMotion id = g.compose(g.inverse());
        EXPECT_LE((id.rotation() - Mat::Identity(m, m)).norm(), 1e-12);
        EXPECT_LE(id.translation().norm(), 1e-12);
      }
    }
  }
  EXPECT_THROW(RigidMotion::from_parameters(3, std::vector<double>(5, 0.0)), ValidationError);
}

TEST(RigidMotionTest, TwoDimensionalAngleAndTranslation) {
  const std::vector<double> p{std::numbers::pi / 2, 1.0, -2.0};
  const RigidMotion g = RigidMotion::from_parameters(2, p);
  Vec x(2);
  x << 1.0, 0.0;
  const Vec y = g.apply(x);
  EXPECT_NEAR(y[0], 1.0, 1e-15);
  EXPECT_NEAR(y[1], -1.0, 1e-15);
}

TEST(LiftedMotionTest, IdentityTranslationAndIsometry) {
  const DghConfig cfg = small_config(2, 0.25);
  const LiftedCloud lift = lift_for_dgh(round_family(2, 1.3), cfg, 3);
  const LiftedCloud same = lifted_rigid_apply(lift, RigidMotion::identity(3));
  EXPECT_EQ(same.cloud.data(), lift.cloud.data());

  Vec t(3);
  t << 0.5, -1.0, 2.0;
  const LiftedCloud moved = lifted_rigid_apply(lift, RigidMotion(Mat::Identity(3, 3), t));
  for (std::size_t i = 0; i < lift.cloud.size(); ++i)
    for (int k = 0; k < lift.cloud.dim(); ++k)
      EXPECT_DOUBLE_EQ(moved.cloud.point(i)[k], lift.cloud.point(i)[k] + (k < 3 ? t[k] : 0.0));

  std::mt19937_64 rng(7);
  const LiftedCloud rotated = lifted_rigid_apply(lift, RigidMotion::from_parameters(3, random_params(rng, 3)));
  EXPECT_LE(max_pair_distance_gap(lift.cloud, rotated.cloud), 1e-12);
  EXPECT_THROW(lifted_rigid_apply(lift, RigidMotion::identity(2)), ValidationError);
}

TEST(LiftedMotionTest, PaddingPreservesDistances) {
  const LiftedCloud lift = lift_for_dgh(round_family(1, 1.0), small_config(1, 0.25), 2);
  const LiftedCloud padded = pad_lifted(lift, 3);
  EXPECT_EQ(padded.ambient_dim, 3);
  EXPECT_EQ(padded.cloud.dim(), 6);
  EXPECT_LE(max_pair_distance_gap(lift.cloud, padded.cloud), 1e-15);
}

TEST(LiftedFrameTest, FrameIsEquivariant) {
  const LiftedCloud lift = lift_for_dgh(wavy_curve(1.0, 0.1, 3), small_config(2, 0.25), 3);
  const RigidMotion frame = lifted_frame(lift);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const RigidMotion g = RigidMotion::from_parameters(3, random_params(rng, 3));
    const RigidMotion moved = lifted_frame(lifted_rigid_apply(lift, g));
    const RigidMotion expected = g.compose(frame);
    EXPECT_LE((moved.rotation() - expected.rotation()).norm(), 1e-9);
    EXPECT_LE((moved.translation() - expected.translation()).norm(), 1e-9);
  }
}

TEST(NelderMeadTest, MinimizesSmoothAndNonsmoothFunctions) {
  auto quad = [](std::span<const double> x) { return std::pow(x[0] - 1.0, 2) + 10.0 * std::pow(x[1] + 2.0, 2); };
  const std::vector<double> steps{0.5, 0.5};
  const SimplexResult q = nelder_mead(quad, {0.0, 0.0}, steps, 2000, 1e-9);
  EXPECT_TRUE(q.converged);
  EXPECT_NEAR(q.x[0], 1.0, 1e-4);
  EXPECT_NEAR(q.x[1], -2.0, 1e-4);
  auto maxabs = [](std::span<const double> x) { return std::max(std::abs(x[0] - 0.3), std::abs(x[1])); };
  const SimplexResult m = nelder_mead(maxabs, {2.0, -1.0}, steps, 2000, 1e-9);
  EXPECT_LE(m.value, 1e-4);
  EXPECT_LE(m.value, maxabs(std::vector<double>{2.0, -1.0}));
}

TEST(EstimateDghTest, CircleLiftsMatchClosedForm) {
  for (double cap : {0.25, 1.0}) {
    const DghEstimate e = estimate_dgh(round_family(1, 1.0), round_family(1, 1.5), small_config(2, cap));
    EXPECT_NEAR(e.value, circle_closed_form(1.0, 1.5, cap), 5e-3) << cap;
    EXPECT_LE(e.value, e.unaligned_value);
    EXPECT_EQ(e.ambient_dim, 2);
    EXPECT_EQ(static_cast<int>(e.restarts.size()), 3);
  }
  EXPECT_NEAR(circle_closed_form(1.0, 1.5, 0.25), 0.506897, 1e-6);
  EXPECT_NEAR(circle_closed_form(1.0, 1.5, 1.0), 0.600925, 1e-6);
}

TEST(EstimateDghTest, OrderZeroOfRotatedCopyIsNearZero) {
  const DghConfig cfg = small_config(0, 0.25);
  const LiftedCloud a = lift_for_dgh(wavy_curve(1.0, 0.1, 3), cfg, 2);
  std::mt19937_64 rng(2);
  const LiftedCloud moved = lifted_rigid_apply(a, RigidMotion::from_parameters(2, random_params(rng, 2)));
  const DghEstimate e = estimate_dgh(moved, wavy_curve(1.0, 0.1, 3), cfg);
  EXPECT_LE(e.value, 1e-4);
  EXPECT_GT(e.raw_value, 0.1);
}

TEST(EstimateDghTest, InvariantUnderMovingReferenceLift) {
  const DghConfig cfg = small_config(1, 0.25);
  const EmbeddingFamily b = wavy_curve(1.0, 0.05, 4);
  const LiftedCloud a = lift_for_dgh(round_family(1, 1.2), cfg, 2);
  const double base = estimate_dgh(a, b, cfg).value;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2; ++trial) {
    const LiftedCloud moved = lifted_rigid_apply(a, RigidMotion::from_parameters(2, random_params(rng, 2)));
    EXPECT_NEAR(estimate_dgh(moved, b, cfg).value, base, 1e-9);
  }
}

TEST(EstimateDghTest, ApproximatelySymmetricAndTriangular) {
  const DghConfig cfg = small_config(2, 0.25);
  const EmbeddingFamily c1 = round_family(1, 1.0), c2 = round_family(1, 1.5), c3 = round_family(1, 2.0);
  const double d12 = estimate_dgh(c1, c2, cfg).value, d21 = estimate_dgh(c2, c1, cfg).value;
  const double d23 = estimate_dgh(c2, c3, cfg).value, d13 = estimate_dgh(c1, c3, cfg).value;
  EXPECT_NEAR(d12, d21, 1e-3);
  EXPECT_LE(d13, d12 + d23 + 1e-3);
  EXPECT_NEAR(estimate_dgh(c1, c1, cfg).value, 0.0, 1e-9);
}

TEST(EstimateDghTest, ThreadCountDoesNotChangeResult) {
  DghConfig cfg = small_config(1, 0.25);
  cfg.restarts = 4;
  const EmbeddingFamily a = round_family(1, 1.0), b = wavy_curve(1.0, 0.05, 5);
  const DghEstimate one = estimate_dgh(a, b, cfg);
  cfg.threads = 3;
  const DghEstimate three = estimate_dgh(a, b, cfg);
  EXPECT_EQ(one.value, three.value);
  EXPECT_EQ(one.best_restart, three.best_restart);
}

TEST(EstimateDghTest, RejectsBadConfigurations) {
  DghConfig cfg = small_config(1, 0.25);
  EXPECT_THROW(estimate_dgh(round_family(1, 1.0), hyperbolic_sphere_family(1, 1.0, 1.0), cfg), ConfigError);
  cfg.restarts = 0;
  EXPECT_THROW(estimate_dgh(round_family(1, 1.0), round_family(1, 2.0), cfg), ConfigError);
  cfg = small_config(4, 0.25);
  EXPECT_THROW(estimate_dgh(round_family(1, 1.0), round_family(1, 2.0), cfg), ConfigError);
}

TEST(EmbeddingNormTest, KnownValues) {
  const EmbeddingMap constant(flat_chart(2), 2, [](std::span<const Jet>, std::span<Jet> y) {
    y[0] = Jet(3.0);
    y[1] = Jet(4.0);
  });
  EXPECT_NEAR(embedding_ck1_norm(constant, 2, 16), 5.0, 1e-12);
  // |f| = |Df| = |Hess f| = 1 on the unit circle.
  EXPECT_NEAR(embedding_ck1_norm(round_family(1, 1.0).map(), 2), 3.0, 1e-8);
  EXPECT_NEAR(embedding_ck1_norm(round_family(1, 2.0).map(), 2), 2.0 + 1.0 + 0.5, 1e-8);
  const double flat = embedding_ck1_norm(wavy_curve(1.0, 0.01, 6).map(), 2);
  const double wavier = embedding_ck1_norm(wavy_curve(1.0, 0.05, 6).map(), 2);
  EXPECT_GT(wavier, flat);
  EXPECT_GT(flat, embedding_ck1_norm(round_family(1, 1.0).map(), 2));
}
