#include "jetgh/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "jetgh/alignment.hpp"
#include "jetgh/cloud_io.hpp"
#include "jetgh/errors.hpp"
#include "jetgh/hamilton.hpp"
#include "jetgh/hausdorff.hpp"
#include "jetgh/scenarios.hpp"

namespace jetgh {

namespace {

using ordered_json = nlohmann::ordered_json;

enum class Kind { Real, Integer, Text };

struct KeySpec {
  Kind kind = Kind::Real;
  std::string fallback;  // empty: no default
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
};

KeySpec real(std::string d, double lo = -std::numeric_limits<double>::infinity(), bool open = false) {
  return {Kind::Real, std::move(d), lo, std::numeric_limits<double>::infinity(), open};
}
KeySpec integer(std::string d, double lo, double hi = std::numeric_limits<double>::infinity()) {
  return {Kind::Integer, std::move(d), lo, hi, false};
}
KeySpec text(std::string d = {}) { return {Kind::Text, std::move(d)}; }

using KeyTable = std::map<std::string, KeySpec>;

void add_sampling(KeyTable& t, const std::string& order) {
  t["order"] = integer(order, 0, Jet::kMaxOrder);
  t["R"] = real("0.25", 0.0, true);
  t["base"] = integer("64", 1);
  t["fiber_radii"] = integer("2", 0);
  t["fiber_dirs"] = integer("8", 1);
  t["top_dirs"] = integer("16", 1);
  t["seed"] = integer("0", 0);
}

void add_optimizer(KeyTable& t) {
  t["restarts"] = integer("8", 1);
  t["iterations"] = integer("500", 0);
  t["tol"] = real("1e-6", 0.0, true);
  t["threads"] = integer("0", 0);
}

struct SubcommandSpec {
  KeyTable keys;
  std::set<std::string> flags;
  int families = 0;  // number of family specs accepted (a, b)
  bool takes_inputs = false;
  std::string format = "csv";
};

const std::map<std::string, SubcommandSpec>& specs() {
  static const std::map<std::string, SubcommandSpec> table = [] {
    std::map<std::string, SubcommandSpec> s;
    {
      SubcommandSpec& h = s["hausdorff"];
      h.keys["metric"] = text("euclidean");
      h.keys["rt"] = real("1", 0.0, true);
      h.takes_inputs = true;
      h.format = "text";
    }
    {
      SubcommandSpec& d = s["dgh"];
      add_sampling(d.keys, "2");
      add_optimizer(d.keys);
      d.flags = {"reflect"};
      d.families = 2;
      d.format = "json";
    }
    {
      SubcommandSpec& l = s["lift"];
      add_sampling(l.keys, "2");
      l.families = 1;
    }
    {
      SubcommandSpec& f = s["ftable"];
      f.keys["r1"] = real("1", 0.0, true);
      f.keys["r2"] = real("2", 0.0, true);
      f.keys["rt"] = text("1e-3..10");
      f.keys["n"] = integer("41", 2);
      f.flags = {"log"};
    }
    {
      SubcommandSpec& w = s["wavy-sweep"];
      w.keys["r1"] = real("1", 0.0, true);
      w.keys["r2"] = real("1.1", 0.0, true);
      w.keys["eps"] = text("0.05,0.02,0.01");
      w.keys["image_base"] = integer("16384", 1);
      add_sampling(w.keys, "2");
    }
    {
      SubcommandSpec& e = s["equivalence"];
      e.keys["family"] = text("circle");
      e.keys["radii"] = text("harmonic");
      e.keys["n"] = integer("8", 1);
      e.keys["r"] = real("1", 0.0, true);
      e.keys["grid"] = integer("512", 1);
      e.keys["margin"] = real("0.05", 0.0);
      e.keys["fd_step"] = real("1e-4", 0.0, true);
      add_sampling(e.keys, "2");
      add_optimizer(e.keys);
    }
    for (auto& [name, spec] : s) {
      spec.keys["out"] = text();
      spec.keys["format"] = text(spec.format);
      for (int i = 0; i < spec.families; ++i) spec.keys[i == 0 ? "a" : "b"] = text();
    }
    return s;
  }();
  return table;
}

const SubcommandSpec& spec_for(const std::string& sub) {
  const auto it = specs().find(sub);
  if (it == specs().end()) throw ConfigError("unknown subcommand '" + sub + "'");
  return it->second;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void set_value(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where) {
  const SubcommandSpec& spec = spec_for(cfg.subcommand);
  if (!spec.keys.count(key))
    throw ConfigError(where + ": unknown key '" + key + "' for subcommand '" + cfg.subcommand + "'");
  cfg.values[key] = value;
  cfg.origin[key] = where;
}

std::optional<double> parse_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<double> parse_list(const RunConfig& cfg, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(cfg.get(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_real(trim(item));
    if (!v)
      throw ConfigError(cfg.origin.at(key) + ": key '" + key + "': '" + item + "' is not a number");
    out.push_back(*v);
  }
  if (out.empty()) throw ConfigError(cfg.origin.at(key) + ": key '" + key + "' is empty");
  return out;
}

SampleCounts sample_counts(const RunConfig& cfg) {
  SampleCounts c;
  c.base = static_cast<int>(cfg.integer("base"));
  c.fiber_radii = static_cast<int>(cfg.integer("fiber_radii"));
  c.fiber_dirs = static_cast<int>(cfg.integer("fiber_dirs"));
  c.top_dirs = static_cast<int>(cfg.integer("top_dirs"));
  return c;
}

DghConfig dgh_config(const RunConfig& cfg) {
  DghConfig d;
  d.order = static_cast<int>(cfg.integer("order"));
  d.fiber_cap = cfg.number("R");
  d.counts = sample_counts(cfg);
  d.seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  d.restarts = static_cast<int>(cfg.integer("restarts"));
  d.max_iterations = static_cast<int>(cfg.integer("iterations"));
  d.simplex_tol = cfg.number("tol");
  d.threads = static_cast<int>(cfg.integer("threads"));
  d.allow_reflection = cfg.flags.count("reflect") != 0;
  return d;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["subcommand"] = cfg.subcommand;
  for (const auto& [k, v] : cfg.values) j["settings"][k] = v;
  j["flags"] = ordered_json::array();
  for (const std::string& f : cfg.flags) j["flags"].push_back(f);
  if (!cfg.inputs.empty()) j["inputs"] = cfg.inputs;
  return j;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;
};

void emit_table(const RunConfig& cfg, const Table& t, std::ostream& os) {
  const std::string& format = cfg.get("format");
  if (format == "json") {
    ordered_json j;
    j["config"] = config_json(cfg);
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    j["notes"] = t.notes;
    os << j.dump(2) << '\n';
    return;
  }
  os << "# " << cfg.describe() << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
    os << '\n';
  }
  for (const std::string& n : t.notes) os << "# " << n << '\n';
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  const std::string& f = cfg.get("format");
  for (const char* a : allowed)
    if (f == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ConfigError(cfg.origin.at("format") + ": format '" + f + "' not supported by '" + cfg.subcommand +
                    "' (use " + list + ")");
}

// -- subcommands -----------------------------------------------------------

void run_hausdorff(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, {"text", "json"});
  if (cfg.inputs.size() != 2) throw ConfigError("hausdorff expects two CSV paths, got " + std::to_string(cfg.inputs.size()));
  const std::string& metric = cfg.get("metric");
  CloudMetric m;
  if (metric == "hyperbolic") {
    m = CloudMetric::hyperbolic(cfg.number("rt"));
  } else if (metric != "euclidean") {
    throw ConfigError(cfg.origin.at("metric") + ": metric must be 'euclidean' or 'hyperbolic', got '" + metric + "'");
  }
  const PointCloud a = read_cloud_csv(cfg.inputs[0], m);
  const PointCloud b = read_cloud_csv(cfg.inputs[1], m);
  if (m.kind == MetricKind::Hyperbolic) {
    for (const PointCloud* c : {&a, &b})
      for (std::size_t i = 0; i < c->size(); ++i) {
        const auto p = c->point(i);
        if (!on_hyperboloid(Eigen::Map<const Vec>(p.data(), static_cast<Eigen::Index>(p.size())), m.radius))
          throw ValidationError("hausdorff: row " + std::to_string(i + 1) + " of " +
                                (c == &a ? cfg.inputs[0] : cfg.inputs[1]) + " is not on the hyperboloid");
      }
  }
  const double d = hausdorff(a, b);
  if (cfg.get("format") == "json") {
    ordered_json j;
    j["hausdorff"] = d;
    j["sizes"] = {a.size(), b.size()};
    j["config"] = config_json(cfg);
    os << j.dump(2) << '\n';
  } else {
    os << format_double(d) << '\n';
  }
}

void run_dgh(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, {"json", "csv"});
  if (!cfg.has("a") || !cfg.has("b")) throw ConfigError("dgh needs two family specs");
  const EmbeddingFamily fa = parse_family(cfg.get("a"));
  const EmbeddingFamily fb = parse_family(cfg.get("b"));
  const DghConfig d = dgh_config(cfg);
  const DghEstimate e = estimate_dgh(fa, fb, d);

  if (cfg.get("format") == "csv") {
    Table t;
    t.columns = {"value", "unaligned_value", "raw_value", "order", "R", "size_a", "size_b", "best_restart"};
    t.rows.push_back({e.value, e.unaligned_value, e.raw_value, static_cast<double>(e.order), e.fiber_cap,
                      static_cast<double>(e.size_a), static_cast<double>(e.size_b),
                      static_cast<double>(e.best_restart)});
    emit_table(cfg, t, os);
    return;
  }
  ordered_json j;
  j["value"] = e.value;
  j["unaligned_value"] = e.unaligned_value;
  j["raw_value"] = e.raw_value;
  j["order"] = e.order;
  j["fiber_cap"] = e.fiber_cap;
  j["ambient_dim"] = e.ambient_dim;
  j["families"] = {{"a", fa.spec()}, {"b", fb.spec()}};
  j["sample_sizes"] = {{"a", e.size_a}, {"b", e.size_b}};
  j["sample_counts"] = {{"base", d.counts.base},
                        {"fiber_radii", d.counts.fiber_radii},
                        {"fiber_dirs", d.counts.fiber_dirs},
                        {"top_dirs", d.counts.top_dirs}};
  j["best_restart"] = e.best_restart;
  j["parameter_names"] = e.parameter_names;
  j["best_parameters"] = e.best_parameters;
  ordered_json rot = ordered_json::array();
  for (Eigen::Index r = 0; r < e.best_rotation.rows(); ++r) {
    std::vector<double> row(e.best_rotation.cols());
    for (Eigen::Index c = 0; c < e.best_rotation.cols(); ++c) row[c] = e.best_rotation(r, c);
    rot.push_back(row);
  }
  j["best_motion"] = {{"rotation", rot},
                      {"translation", std::vector<double>(e.best_translation.data(),
                                                          e.best_translation.data() + e.best_translation.size())}};
  ordered_json trace = ordered_json::array();
  for (const RestartTrace& r : e.restarts) {
    trace.push_back({{"restart", r.index},
                     {"reflected", r.reflected},
                     {"start", r.start},
                     {"start_value", r.start_value},
                     {"best", r.best},
                     {"value", r.value},
                     {"iterations", r.iterations},
                     {"evaluations", r.evaluations},
                     {"converged", r.converged},
                     {"improved", r.improved}});
  }
  j["trace"] = trace;
  j["config"] = config_json(cfg);
  os << j.dump(2) << '\n';
}

void run_lift(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, {"csv"});
  if (!cfg.has("a")) throw ConfigError("lift needs a family spec");
  const EmbeddingFamily fam = parse_family(cfg.get("a"));
  const EmbeddingMap f = fam.map();
  const int order = static_cast<int>(cfg.integer("order"));
  const UnitBundleSample sample = unit_bundle_sample(SasakiMetric(f.source()), order, sample_counts(cfg),
                                                     cfg.number("R"),
                                                     static_cast<std::uint64_t>(cfg.integer("seed")));
  write_lifted_csv(os, lift_cloud(f, sample), cfg.describe());
}

void run_ftable(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, {"csv", "json"});
  const double r1 = cfg.number("r1"), r2 = cfg.number("r2");
  const std::string& spec = cfg.get("rt");
  std::vector<double> rts;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const auto lo = parse_real(trim(spec.substr(0, dots)));
    const auto hi = parse_real(trim(spec.substr(dots + 2)));
    if (!lo || !hi || !(*lo > 0.0) || !(*hi > *lo))
      throw ConfigError(cfg.origin.at("rt") + ": key 'rt': range '" + spec + "' must be lo..hi with 0 < lo < hi");
    const long n = cfg.integer("n");
    const bool log = cfg.flags.count("log") != 0;
    for (long j = 0; j < n; ++j) {
      const double u = static_cast<double>(j) / static_cast<double>(n - 1);
      rts.push_back(log ? std::pow(10.0, std::log10(*lo) + (std::log10(*hi) - std::log10(*lo)) * u)
                        : *lo + (*hi - *lo) * u);
    }
  } else {
    rts = parse_list(cfg, "rt");
  }
  Table t;
  t.columns = {"rt", "F"};
  for (double rt : rts) {
    if (!(rt > 0.0)) throw ConfigError(cfg.origin.at("rt") + ": key 'rt': values must be positive");
    t.rows.push_back({rt, F_function(r1, r2, rt)});
  }
  emit_table(cfg, t, os);
}

void run_wavy_sweep(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, {"csv", "json"});
  const double r1 = cfg.number("r1"), r2 = cfg.number("r2");
  const int order = static_cast<int>(cfg.integer("order"));
  const double cap = cfg.number("R");
  const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  const SampleCounts counts = sample_counts(cfg);
  SampleCounts image_counts = counts;
  image_counts.base = static_cast<int>(cfg.integer("image_base"));

  const EmbeddingMap circle = round_family(1, r1).map();
  const SasakiMetric circle_metric(circle.source());
  const PointCloud circle_image = lift_cloud(circle, unit_bundle_sample(circle_metric, 0, image_counts, cap, seed)).cloud;
  const PointCloud circle_lift = lift_cloud(circle, unit_bundle_sample(circle_metric, order, counts, cap, seed)).cloud;

  Table t;
  t.columns = {"eps", "waves", "amplitude", "length", "image_hausdorff", "lifted_hausdorff"};
  for (double eps : parse_list(cfg, "eps")) {
    const EmbeddingFamily fam = build_wavy_circle(r1, r2, eps);
    const EmbeddingMap f = fam.map();
    const SasakiMetric metric(f.source());
    const PointCloud image = lift_cloud(f, unit_bundle_sample(metric, 0, image_counts, cap, seed)).cloud;
    const PointCloud lifted = lift_cloud(f, unit_bundle_sample(metric, order, counts, cap, seed)).cloud;
    t.rows.push_back({eps, fam.info.at("waves"), fam.info.at("amplitude"), fam.info.at("length"),
                      hausdorff(image, circle_image), hausdorff(lifted, circle_lift)});
  }
  emit_table(cfg, t, os);
}

std::vector<double> parse_radii(const RunConfig& cfg) {
  const std::string& spec = cfg.get("radii");
  const long n = cfg.integer("n");
  const double r = cfg.number("r");
  std::vector<double> radii;
  if (spec == "harmonic") {
    for (long i = 1; i <= n; ++i) radii.push_back(r + 1.0 / static_cast<double>(i));
  } else if (spec.rfind("const:", 0) == 0) {
    const auto v = parse_real(spec.substr(6));
    if (!v || !(*v > 0.0)) throw ConfigError(cfg.origin.at("radii") + ": key 'radii': bad constant in '" + spec + "'");
    radii.assign(static_cast<std::size_t>(n), *v);
  } else {
    radii = parse_list(cfg, "radii");
    for (double v : radii)
      if (!(v > 0.0)) throw ConfigError(cfg.origin.at("radii") + ": key 'radii': radii must be positive");
  }
  return radii;
}

void run_equivalence(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, {"csv", "json"});
  EquivalenceConfig e;
  const std::string& family = cfg.get("family");
  if (family == "circle") {
    e.kind = RoundKind::Circle;
  } else if (family == "sphere") {
    e.kind = RoundKind::Sphere;
  } else {
    throw ConfigError(cfg.origin.at("family") + ": key 'family' must be 'circle' or 'sphere', got '" + family + "'");
  }
  e.reference_radius = cfg.number("r");
  e.dgh = dgh_config(cfg);
  if (e.dgh.order < 1) throw ConfigError(cfg.origin.at("order") + ": key 'order' must be at least 1 for equivalence");
  e.grid.per_dim = static_cast<int>(cfg.integer("grid"));
  e.grid.margin = cfg.number("margin");
  e.grid.fd_step = cfg.number("fd_step");

  const ConvergenceReport report = equivalence_experiment(parse_radii(cfg), e);
  Table t;
  t.columns = {"i", "r_i", "dgh_estimate", "ck_norm", "runtime_ms"};
  for (const ConvergenceRecord& r : report.records)
    t.rows.push_back({static_cast<double>(r.i), r.r, r.dgh, r.ck, r.runtime_ms});
  t.notes.push_back(fmt::format("verdict dgh_to_zero={} ck_to_zero={} co_convergent={}", report.dgh_to_zero,
                                report.ck_to_zero, report.co_convergent));
  emit_table(cfg, t, os);
}

}  // namespace

const std::string& RunConfig::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ConfigError("missing required key '" + key + "'");
  return it->second;
}

double RunConfig::number(const std::string& key) const {
  const auto v = parse_real(get(key));
  if (!v) throw ConfigError(origin.at(key) + ": key '" + key + "': '" + get(key) + "' is not a number");
  return *v;
}

long RunConfig::integer(const std::string& key) const {
  const std::string& s = get(key);
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size())
    throw ConfigError(origin.at(key) + ": key '" + key + "': '" + s + "' is not an integer");
  return v;
}

std::string RunConfig::describe() const {
  std::string s = "jetgh " + subcommand;
  for (const std::string& in : inputs) s += " " + in;
  for (const auto& [k, v] : values) s += " " + k + "=" + v;
  for (const std::string& f : flags) s += " " + f;
  return s;
}

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {"hausdorff", "dgh", "lift", "ftable", "wavy-sweep", "equivalence"};
  return names;
}

void apply_config_stream(RunConfig& cfg, std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = name + ":" + std::to_string(lineno);
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      apply_tokens(cfg, {t}, where);
      continue;
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": missing key before '='");
    set_value(cfg, key, trim(t.substr(eq + 1)), where);
  }
}

void apply_tokens(RunConfig& cfg, const std::vector<std::string>& tokens, const std::string& where) {
  const SubcommandSpec& spec = spec_for(cfg.subcommand);
  int next_family = 0;
  for (const std::string& tok : tokens) {
    if (tok.find('{') != std::string::npos) {
      if (next_family >= spec.families)
        throw ConfigError(where + ": unexpected family spec '" + tok + "' for subcommand '" + cfg.subcommand + "'");
      set_value(cfg, next_family == 0 ? "a" : "b", tok, where);
      ++next_family;
      continue;
    }
    const auto eq = tok.find('=');
    if (eq != std::string::npos) {
      const std::string key = tok.substr(0, eq);
      if (key.empty()) throw ConfigError(where + ": token '" + tok + "' has no key");
      set_value(cfg, key, tok.substr(eq + 1), where);
      continue;
    }
    if (spec.flags.count(tok)) {
      cfg.flags.insert(tok);
    } else if (spec.takes_inputs) {
      cfg.inputs.push_back(tok);
    } else {
      throw ConfigError(where + ": unknown flag '" + tok + "' for subcommand '" + cfg.subcommand + "'");
    }
  }
}

void finalize_config(RunConfig& cfg) {
  const SubcommandSpec& spec = spec_for(cfg.subcommand);
  for (const auto& [key, ks] : spec.keys) {
    if (!cfg.has(key) && !ks.fallback.empty()) {
      cfg.values[key] = ks.fallback;
      cfg.origin[key] = "default";
    }
    if (!cfg.has(key)) continue;
    if (ks.kind == Kind::Text) continue;
    const double v = ks.kind == Kind::Integer ? static_cast<double>(cfg.integer(key)) : cfg.number(key);
    const bool below = ks.lo_open ? !(v > ks.lo) : !(v >= ks.lo);
    if (below || v > ks.hi) {
      std::string range = (ks.lo_open ? "(" : "[") + format_double(ks.lo) + ", " + format_double(ks.hi) + "]";
      throw ConfigError(cfg.origin.at(key) + ": key '" + key + "' = " + cfg.get(key) + " outside " + range);
    }
  }
}

RunConfig parse_run_config(const std::string& subcommand, const std::vector<std::string>& tokens,
                           const std::string& config_path) {
  RunConfig cfg;
  cfg.subcommand = subcommand;
  spec_for(subcommand);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open config file '" + config_path + "'");
    apply_config_stream(cfg, in, config_path);
  }
  apply_tokens(cfg, tokens);
  finalize_config(cfg);
  return cfg;
}

void run_scenario(const RunConfig& cfg, std::ostream& out) {
  static const std::map<std::string, std::function<void(const RunConfig&, std::ostream&)>> runners = {
      {"hausdorff", run_hausdorff}, {"dgh", run_dgh},   {"lift", run_lift},
      {"ftable", run_ftable},       {"wavy-sweep", run_wavy_sweep}, {"equivalence", run_equivalence},
  };
  const auto it = runners.find(cfg.subcommand);
  if (it == runners.end()) throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");
  if (!cfg.has("out")) {
    it->second(cfg, out);
    out.flush();
    return;
  }
  // Render fully before touching the file so failures leave no partial output.
  std::ostringstream buffer;
  it->second(cfg, buffer);
  const std::string& path = cfg.get("out");
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << buffer.str();
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ValidationError*>(&e)) return kExitConfig;
  if (dynamic_cast<const ConstructionError*>(&e)) return kExitConstruction;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  return kExitNumeric;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jet-lifted Gromov-Hausdorff distance estimates between Riemannian manifolds"};
  app.require_subcommand(1);
  std::map<std::string, std::vector<std::string>> tokens;
  std::map<std::string, std::string> config_paths;
  static const std::map<std::string, std::string> help = {
      {"hausdorff", "Hausdorff distance between two CSV clouds"},
      {"dgh", "estimate d_GH^k between two embedding families (JSON)"},
      {"lift", "dump the lifted unit-bundle cloud of a family (CSV)"},
      {"ftable", "tabulate F_{r1,r2}(rt) over a range of rt"},
      {"wavy-sweep", "image vs lifted Hausdorff of wavy circles over eps"},
      {"equivalence", "d_GH^k estimates next to C^k norms along a radius sequence"},
  };
  for (const std::string& name : subcommand_names()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("tokens", tokens[name], "family specs, key=value settings and flags");
    sub->add_option("--config", config_paths[name], "flat key=value file");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  std::string name;
  for (const std::string& n : subcommand_names())
    if (app.got_subcommand(n)) name = n;
  try {
    const RunConfig cfg = parse_run_config(name, tokens[name], config_paths[name]);
    run_scenario(cfg, out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "jetgh " << name << ": error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace jetgh
