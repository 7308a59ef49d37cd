// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any
// criterion fails.

#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "jetgh/alignment.hpp"
#include "jetgh/cli.hpp"
#include "jetgh/hamilton.hpp"
#include "jetgh/hausdorff.hpp"
#include "jetgh/scenarios.hpp"

using namespace jetgh;

namespace {

constexpr double kPi = std::numbers::pi;
// Optimizer tolerance of the distance-axiom checks, equal to the identity bound.
constexpr double kTolOpt = 1e-3;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [violated]");
  }
};

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) out.push_back(item);
  return out;
}

Csv run_csv(std::vector<std::string> args) {
  args.insert(args.begin(), "jetgh");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) throw std::runtime_error("jetgh " + args[1] + " exited with " + std::to_string(code) + ": " + err.str());
  Csv csv;
  std::istringstream in(out.str());
  for (std::string line; std::getline(in, line);) {
    if (line.rfind('#', 0) == 0) {
      csv.comments.push_back(line);
    } else if (csv.header.empty()) {
      csv.header = split(line, ',');
    } else {
      std::vector<double> row;
      for (const std::string& v : split(line, ',')) row.push_back(std::stod(v));
      csv.rows.push_back(row);
    }
  }
  return csv;
}

std::string g(double v) { return fmt::format("{:.6g}", v); }

PointCloud image(const EmbeddingFamily& fam, int base) {
  const EmbeddingMap f = fam.map();
  return lift_cloud(f, unit_bundle_sample(SasakiMetric(f.source()), 0, SampleCounts{base, 1, 1, 1}, 1.0)).cloud;
}

double direct_f(double r1, double r2, double rt) { return rt * (std::asinh(r2 / rt) - std::asinh(r1 / rt)); }

Outcome f_function_exactness() {
  Outcome o;
  const Csv table = run_csv({"ftable"});
  double worst = 0.0;
  for (const auto& row : table.rows) worst = std::max(worst, std::abs(row[1] - direct_f(1.0, 2.0, row[0])));
  o.require(table.rows.size() == 41 && worst <= 1e-12, "max |ftable - direct| = " + g(worst) + " <= 1e-12");
  const Csv pts = run_csv({"ftable", "rt=1,1e-3"});
  o.require(std::abs(pts.rows[0][1] - 0.562261) <= 1e-6, "F(1,2,1) = " + fmt::format("{:.9f}", pts.rows[0][1]));
  const double gap = std::abs(pts.rows[1][1] - 1e-3 * std::log(2.0));
  o.require(gap <= 1e-5, "|F(1,2,1e-3) - 1e-3 ln 2| = " + g(gap) + " <= 1e-5");
  return o;
}

Outcome hyperbolic_hausdorff() {
  Outcome o;
  for (double rt : {0.1, 1.0, 10.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const PointCloud a = image(hyperbolic_sphere_family(1, 1.0, rt), 2048);
    const PointCloud b = image(hyperbolic_sphere_family(1, 2.0, rt), 2048);
    const double d = hausdorff(a, b);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double err = std::abs(d - F_function(1.0, 2.0, rt));
    o.require(err <= 1e-3 && secs < 10.0, "rt=" + g(rt) + ": |d_H - F| = " + g(err) + " in " + g(secs) + " s");
  }
  return o;
}

Outcome wavy_counterexample() {
  Outcome o;
  const Csv sweep = run_csv({"wavy-sweep"});
  // Oracle constant: brute-force lifted distance at eps = 0.05 with the
  // sweep's sample counts.
  const DghConfig cfg;
  const LiftedCloud circle = lift_for_dgh(round_family(1, 1.0), cfg, 2);
  const LiftedCloud wavy = lift_for_dgh(build_wavy_circle(1.0, 1.1, 0.05), cfg, 2);
  const double c0 = hausdorff_brute(wavy.cloud, circle.cloud);
  o.require(c0 > 0.0, "c0 = " + g(c0));
  double prev = 0.0;
  for (const auto& row : sweep.rows) {
    const double eps = row[0], img = row[4], lifted = row[5];
    o.require(img <= eps && lifted >= c0 - 1e-12 && lifted >= prev,
              "eps=" + g(eps) + ": image " + g(img) + ", lifted " + g(lifted));
    prev = lifted;
  }
  o.require(sweep.rows.size() == 3, "three eps rows");
  return o;
}

Outcome double_wind_counterexample() {
  Outcome o;
  const EmbeddingFamily fam = double_wind_curve(1.0, 0.01);
  PointCloud core(3);
  for (int i = 0; i < 16384; ++i) {
    const double t = 2 * kPi * i / 16384;
    const double p[3] = {std::cos(t), std::sin(t), 0.0};
    core.add(p);
  }
  const double d = hausdorff(image(fam, 16384), core);
  const double len = fam.info.at("length");
  o.require(d <= 0.01, "image d_H = " + g(d) + " <= 0.01");
  o.require(len > 4 * kPi && len < 4 * kPi + 1e-2, "length - 4 pi = " + g(len - 4 * kPi));
  return o;
}

Outcome round_estimates() {
  Outcome o;
  DghConfig two;
  two.order = 2;
  const double c = estimate_dgh(round_family(1, 1.0), round_family(1, 1.5), two).value;
  o.require(c >= 0.475 && c <= 0.525, "circles 1 vs 1.5, order 2: " + g(c));
  DghConfig one;
  one.order = 1;
  const double s = estimate_dgh(round_family(2, 1.0), round_family(2, 2.0), one).value;
  o.require(s >= 0.95 && s <= 1.05, "spheres 1 vs 2, order 1: " + g(s));
  return o;
}

Outcome distance_axioms() {
  Outcome o;
  const DghConfig cfg;
  auto est = [&](double r1, double r2) { return estimate_dgh(round_family(1, r1), round_family(1, r2), cfg).value; };
  const double id = est(1.0, 1.0);
  o.require(id <= 1e-3, "identity " + g(id));
  const double ab = est(1.0, 1.5), ba = est(1.5, 1.0);
  o.require(std::abs(ab - ba) <= 2 * kTolOpt, "symmetry gap " + g(std::abs(ab - ba)));
  const double d12 = est(1.0, 1.3), d23 = est(1.3, 1.7), d13 = est(1.0, 1.7);
  o.require(d13 <= d12 + d23 + 3 * kTolOpt, "triangle " + g(d13) + " <= " + g(d12) + " + " + g(d23));
  return o;
}

Outcome sasaki_infrastructure() {
  Outcome o;
  double flat = 0.0;
  for (int m : {1, 2, 3}) {
    const SasakiMetric s(flat_chart(m));
    for (int level = 0; level <= 3; ++level) {
      Vec p = Vec::LinSpaced(s.point_dim(level), -0.7, 0.9);
      p.head(m).setConstant(0.1);
      flat = std::max(flat, (s.matrix(level, p) - Mat::Identity(p.size(), p.size())).cwiseAbs().maxCoeff());
    }
  }
  o.require(flat <= 1e-10, "flat Sasaki deviation " + g(flat));

  double unit = 0.0;
  for (const MetricChart& chart : {circle_chart(1.3), sphere_chart(0.8)}) {
    const SasakiMetric s(chart);
    for (int order : {1, 2})
      for (const JetPoint& p : unit_bundle_sample(s, order, SampleCounts{16, 2, 4, 8}, 0.25).points) {
        const JetPoint base = p.base();
        const Vec w = p.fiber();
        const Mat g_base = base.order() == 0 ? chart.metric(base.coords()) : s.matrix(base.order(), base.coords());
        unit = std::max(unit, std::abs(w.dot(g_base * w) - 1.0));
      }
  }
  o.require(unit <= 1e-9, "unit-norm deviation " + g(unit));

  // Circle: d^2 f(t, u, a, b) blocks are r e, r u n, r a n, -r u a e + r b n.
  double nested = 0.0;
  const double r = 1.4;
  const EmbeddingMap circle = round_family(1, r).map();
  for (double t : {0.1, 1.7, 4.0}) {
    const double u = 0.6, a = -1.1, b = 0.3;
    Vec c(4);
    c << t, u, a, b;
    const JetPoint q = circle.nested_differential(JetPoint(2, 1, c));
    Vec e(2), n(2);
    e << std::cos(t), std::sin(t);
    n << -std::sin(t), std::cos(t);
    nested = std::max({nested, (q.block(0) - r * e).norm(), (q.block(1) - r * u * n).norm(),
                       (q.block(2) - r * a * n).norm(), (q.block(3) - (-r * u * a * e + r * b * n)).norm()});
  }
  // Sphere: first derivatives against the hand-written Jacobian, second
  // against d^2 f = -f on the coordinate directions at the equator.
  const EmbeddingMap sphere = round_family(2, r).map();
  for (double th : {0.3, 2.0}) {
    const double ph = kPi / 2;
    Vec c(8);
    c << ph, th, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0;
    const JetPoint q = sphere.nested_differential(JetPoint(2, 2, c));
    Vec f(3), fp(3);
    f << std::cos(th), std::sin(th), 0.0;
    fp << 0.0, 0.0, -1.0;
    nested = std::max({nested, (q.block(0) - r * f).norm(), (q.block(1) - r * fp).norm(), (q.block(3) + r * f).norm()});
  }
  o.require(nested <= 1e-8, "nested differential error " + g(nested));
  return o;
}

Outcome hamilton_equivalence() {
  Outcome o;
  const Csv conv = run_csv({"equivalence"});
  bool decreasing = conv.rows.size() == 8;
  for (std::size_t i = 1; i < conv.rows.size(); ++i)
    decreasing = decreasing && conv.rows[i][2] < conv.rows[i - 1][2] && conv.rows[i][3] < conv.rows[i - 1][3];
  o.require(decreasing, "both columns strictly decreasing");
  const auto& last = conv.rows.back();
  o.require(last[2] <= 0.15, "final d_GH^k " + g(last[2]));
  o.require(last[3] <= 0.27, "final C^k " + g(last[3]));
  const Csv control = run_csv({"equivalence", "radii=const:2"});
  double low = INFINITY;
  for (const auto& row : control.rows) low = std::min({low, row[2], row[3]});
  o.require(control.rows.size() == 8 && low >= 0.9, "control minimum " + g(low));
  return o;
}

Outcome ck_closed_form() {
  Outcome o;
  const MetricChart g1 = circle_chart(1.0);
  const TensorField02 g_field{g1, [g1](const Vec& p) { return g1.metric(p); }};
  double worst = 0.0;
  for (double rho : {0.5, 1.5, 2.0}) {
    const TensorField02 sigma = difference(pullback_metric(g1, ChartMap::identity(1), circle_chart(rho)), g_field);
    for (int k = 0; k <= 2; ++k) worst = std::max(worst, std::abs(ck_norm(sigma, g1, k) - std::abs(rho * rho - 1.0)));
  }
  o.require(worst <= 1e-8, "max error " + g(worst));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "F-function exactness", 1.0, f_function_exactness},
      {2, "hyperbolic Hausdorff equals F", 30.0, hyperbolic_hausdorff},
      {3, "wavy circle counterexample", 60.0, wavy_counterexample},
      {4, "double-wound curve counterexample", 5.0, double_wind_counterexample},
      {5, "round circle and sphere estimates", 600.0, round_estimates},
      {6, "distance axioms", 900.0, distance_axioms},
      {7, "Sasaki and jet infrastructure", 60.0, sasaki_infrastructure},
      {8, "Hamilton equivalence", 1800.0, hamilton_equivalence},
      {9, "C^k norm closed form", 60.0, ck_closed_form},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit_s) {
      o.pass = false;
      o.detail += fmt::format("; runtime over {} s", c.limit_s);
    }
    if (!o.pass) ++failures;
    std::cout << fmt::format("{} {}. {} ({:.1f} s): {}", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail)
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
