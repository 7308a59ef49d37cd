#pragma once

// Concrete manifolds and isometric embeddings: round circles and spheres,
// the wavy circle confined to an annulus, the doubly wound curve in a thin
// tube, and spheres inside the hyperboloid model.

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "jetgh/arc_length.hpp"
#include "jetgh/jet_lift.hpp"

namespace jetgh {

// F_{r1,r2}(rt) = rt (asinh(r2/rt) - asinh(r1/rt)): the hyperbolic distance
// between the images of S^n(r1^-2) and S^n(r2^-2) inside H^{n+1}(-rt^-2).
double F_function(double r1, double r2, double rt);

struct ShapeParameter {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  double initial = 0.0;
  bool periodic = false;
};

// A parametric family of isometric embeddings of one Riemannian manifold.
class EmbeddingFamily {
 public:
  using Builder = std::function<EmbeddingMap(std::span<const double> shape)>;

  EmbeddingFamily(std::string key, std::map<std::string, double> params, Builder build,
                  std::vector<ShapeParameter> shape = {});

  const std::string& key() const { return key_; }
  const std::map<std::string, double>& params() const { return params_; }
  // Canonical spec string, e.g. "circle{r=1}".
  std::string spec() const;

  const std::vector<ShapeParameter>& shape_parameters() const { return shape_; }
  std::vector<double> initial_shape() const;

  EmbeddingMap map() const;
  // Throws ConfigError when a value falls outside its declared bounds.
  EmbeddingMap map(std::span<const double> shape) const;

  // Values derived during construction (wave count, amplitude, length, ...).
  std::map<std::string, double> info;

 private:
  std::string key_;
  std::map<std::string, double> params_;
  Builder build_;
  std::vector<ShapeParameter> shape_;
};

// Totally umbilic embedding of S^n(r^-2) into E^{n+1}, barycentre at the
// origin. n is 1 or 2.
EmbeddingFamily round_family(int n, double r);

// f_{r,rt}(x) = (sqrt(rt^2 + r^2), x) from S^n(r^-2) into H^{n+1}(-rt^-2).
EmbeddingMap hyperbolic_sphere_embedding(int n, double r, double rt);
EmbeddingFamily hyperbolic_sphere_family(int n, double r, double rt);

struct WavyOptions {
  double amplitude_fraction = 0.9;  // a <= fraction * eps
  long max_waves = 1'000'000;
  double bisection_tol = 1e-12;
  int min_panels = 4096;
  int panels_per_wave = 64;
};

// S^1(r2^-2) embedded into the eps-annulus around the circle of radius r1 as
// the polar graph rho = r1 + a sin(N theta), reparametrized by arc length.
// N is the smallest wave count for which an amplitude a in (0, 0.9 eps]
// reaches length 2 pi r2. Declares the shape parameter "phase" (arc-length
// origin, in source-chart radians).
EmbeddingFamily build_wavy_circle(double r1, double r2, double eps, const WavyOptions& opts = {});

// Length of the polar graph r1 + a sin(N theta); exposed for tests.
double wavy_length(double r1, double a, long waves);

// The polar graph rho = r1 + a sin(N theta) with given amplitude and wave
// count, reparametrized by arc length (source radius = length / 2 pi).
EmbeddingFamily wavy_curve(double r1, double a, long waves, int panels = 4096);

// Closed curve in E^3 winding twice around the circle of radius r1 inside a
// tube of radius delta: ((r1 + h cos t) cos 2t, (r1 + h cos t) sin 2t, h sin t)
// with h = 0.9 delta, reparametrized by arc length. Realizes S^1(r2^-2) with
// r2 = length / 2 pi slightly above 2 r1.
EmbeddingFamily double_wind_curve(double r1, double delta);

// Parses "circle{r=1}", "sphere{r=2}", "wavy{r1=1,r2=1.1,eps=0.05}",
// "double_wind{r1=1,delta=0.01}", "hyp_sphere{n=1,r=1,rt=0.5}".
EmbeddingFamily parse_family(const std::string& spec);

}  // namespace jetgh
