#pragma once

// Rigid alignment of lifted clouds and the d_GH^k estimator.
//
// The estimator fixes the lift of family A and searches over rigid motions of
// the common ambient E^m (plus any shape parameters of family B) for the
// smallest Hausdorff distance between the lifts. A motion acts on a lifted
// cloud affinely on the base block and linearly on every derivative block.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "jetgh/jet_lift.hpp"
#include "jetgh/linalg.hpp"
#include "jetgh/scenarios.hpp"

namespace jetgh {

class RigidMotion {
 public:
  RigidMotion(Mat rotation, Vec translation);
  static RigidMotion identity(int m);

  // Rotation parameters (angle for m = 2, axis-angle vector for m = 3, Givens
  // angles in lexicographic plane order otherwise) followed by m translation
  // components. `reflect` composes the rotation with diag(-1, 1, ..., 1).
  static int parameter_count(int m);
  static RigidMotion from_parameters(int m, std::span<const double> params, bool reflect = false);

  int dim() const { return static_cast<int>(translation_.size()); }
  const Mat& rotation() const { return rotation_; }
  const Vec& translation() const { return translation_; }

  Vec apply(const Vec& x) const { return rotation_ * x + translation_; }
  RigidMotion inverse() const;
  // (*this) o other
  RigidMotion compose(const RigidMotion& other) const;

 private:
  Mat rotation_;
  Vec translation_;
};

// Applies the lifted motion x -> A x + b on the base block, v -> A v on the
// others. The result is an isometric copy in E^{2^l m}.
LiftedCloud lifted_rigid_apply(const LiftedCloud& cloud, const RigidMotion& motion);

// Re-embeds every block of the cloud into E^m with trailing zero coordinates.
LiftedCloud pad_lifted(const LiftedCloud& cloud, int m);

// A rigid frame of a lifted cloud, built from its base barycentre and an
// ordered Gram-Schmidt scan of its points. Equivariant: the frame of
// lifted_rigid_apply(c, g) is g o frame(c) for proper motions g.
RigidMotion lifted_frame(const LiftedCloud& cloud);

struct DghConfig {
  int order = 2;
  double fiber_cap = 0.25;
  SampleCounts counts;
  int restarts = 8;
  int max_iterations = 500;
  double simplex_tol = 1e-6;
  std::uint64_t seed = 0;
  bool allow_reflection = false;
  // 0 picks JETGH_THREADS or the hardware concurrency.
  int threads = 0;
};

struct RestartTrace {
  int index = 0;
  std::vector<double> start;
  std::vector<double> best;
  double start_value = 0.0;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  bool improved = false;
  bool reflected = false;
};

struct DghEstimate {
  double value = 0.0;
  // Objective at the start of restart 0 (the frame-matched initial lift).
  double unaligned_value = 0.0;
  // Hausdorff distance of the lifts as embedded, with no motion at all.
  double raw_value = 0.0;
  int order = 0;
  double fiber_cap = 0.0;
  int ambient_dim = 0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  int best_restart = 0;
  // Parameters are expressed relative to the frames of the two lifts; the
  // world motion x -> best_rotation x + best_translation acts on B's lift.
  std::vector<double> best_parameters;
  std::vector<std::string> parameter_names;
  Mat best_rotation;
  Vec best_translation;
  std::vector<RestartTrace> restarts;
};

// Minimizes max-min objectives without derivatives. Returns the best vertex.
struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                          std::span<const double> steps, int max_iterations, double diameter_tol);

// The lift estimate_dgh uses for a family, padded to E^ambient_dim.
LiftedCloud lift_for_dgh(const EmbeddingFamily& fam, const DghConfig& cfg, int ambient_dim);

DghEstimate estimate_dgh(const EmbeddingFamily& fam_a, const EmbeddingFamily& fam_b, const DghConfig& cfg);

// Same, with A's lift supplied (optionally moved by a rigid motion).
DghEstimate estimate_dgh(const LiftedCloud& lift_a, const EmbeddingFamily& fam_b, const DghConfig& cfg);

// sum_{j=0}^{order} sup over the grid of |D^j f| measured in g-orthonormal
// frames; the second derivative is the covariant Hessian.
double embedding_ck1_norm(const EmbeddingMap& f, int order, int grid = 256);

int resolve_thread_count(int requested);

}  // namespace jetgh
