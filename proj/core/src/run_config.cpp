#include "wgn/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wgn/io.hpp"

namespace wgn {

namespace {

using nlohmann::json;

// Collects every violation before failing, so a bad config reports all of
// its problems in one pass.
struct Issues {
  std::vector<std::string> list;
  void add(const std::string& msg) { list.push_back(msg); }
  bool ok() const { return list.empty(); }
  std::string joined() const {
    std::string s = "config:";
    for (const auto& m : list) s += "\n  - " + m;
    return s;
  }
};

void check_keys(const json& obj, const char* section,
                const std::set<std::string>& allowed, Issues& issues) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      issues.add(std::string(section) + ": unknown key \"" + key + "\"");
  }
}

double get_num(const json& obj, const char* section, const char* key,
               double fallback, Issues& issues) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    issues.add(std::string(section) + "." + key + " must be a number");
    return fallback;
  }
  return obj[key].get<double>();
}

int get_int(const json& obj, const char* section, const char* key,
            int fallback, Issues& issues) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    issues.add(std::string(section) + "." + key + " must be an integer");
    return fallback;
  }
  return obj[key].get<int>();
}

std::string get_str(const json& obj, const char* section, const char* key,
                    const std::string& fallback, Issues& issues) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    issues.add(std::string(section) + "." + key + " must be a string");
    return fallback;
  }
  return obj[key].get<std::string>();
}

bool get_bool(const json& obj, const char* section, const char* key,
              bool fallback, Issues& issues) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) {
    issues.add(std::string(section) + "." + key + " must be a boolean");
    return fallback;
  }
  return obj[key].get<bool>();
}

const json* get_section(const json& doc, const char* name, bool required, Issues& issues) {
  if (!doc.contains(name)) {
    if (required) issues.add(std::string("missing required section \"") + name + "\"");
    return nullptr;
  }
  if (!doc[name].is_object()) {
    issues.add(std::string("section \"") + name + "\" must be an object");
    return nullptr;
  }
  return &doc[name];
}

} // namespace

RunConfig run_config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  Issues issues;
  RunConfig cfg;

  static const std::set<std::string> top_keys = {
      "grid", "params", "initial", "bathymetry", "stepping",
      "solver", "outputs", "diagnostics"};
  check_keys(doc, "top level", top_keys, issues);

  int n_points = 0;
  double length = 0.0;
  if (const json* grid = get_section(doc, "grid", true, issues)) {
    check_keys(*grid, "grid", {"n_points", "length"}, issues);
    n_points = get_int(*grid, "grid", "n_points", 0, issues);
    length = get_num(*grid, "grid", "length", 0.0, issues);
    try {
      cfg.grid = make_grid(n_points, length);
    } catch (const std::exception& e) {
      issues.add(e.what());
    }
  }

  if (const json* params = get_section(doc, "params", true, issues)) {
    check_keys(*params, "params", {"mu", "epsilon", "beta", "h0"}, issues);
    cfg.params.mu = get_num(*params, "params", "mu", 1.0, issues);
    cfg.params.epsilon = get_num(*params, "params", "epsilon", 0.0, issues);
    cfg.params.beta = get_num(*params, "params", "beta", 0.0, issues);
    cfg.params.h0 = get_num(*params, "params", "h0", 0.5, issues);
    for (const auto& msg : validate_params(cfg.params)) issues.add("params: " + msg);
  }

  if (const json* init = get_section(doc, "initial", true, issues)) {
    check_keys(*init, "initial",
               {"kind", "amplitude", "center", "width", "mode", "path"}, issues);
    cfg.initial.kind = get_str(*init, "initial", "kind", "", issues);
    cfg.initial.amplitude = get_num(*init, "initial", "amplitude", 0.1, issues);
    cfg.initial.center = get_num(*init, "initial", "center", length / 2, issues);
    cfg.initial.width = get_num(*init, "initial", "width", 0.35, issues);
    cfg.initial.mode = get_int(*init, "initial", "mode", 1, issues);
    cfg.initial.path = get_str(*init, "initial", "path", "", issues);

    if (cfg.initial.kind == "gaussian") {
      if (!(cfg.initial.width > 0.0)) issues.add("initial.width must be positive");
      if (!std::isfinite(cfg.initial.amplitude)) issues.add("initial.amplitude must be finite");
    } else if (cfg.initial.kind == "mode") {
      if (cfg.initial.mode < 1 || (n_points > 0 && cfg.initial.mode > n_points / 2 - 1))
        issues.add("initial.mode must lie in [1, n_points/2 - 1]");
    } else if (cfg.initial.kind == "file") {
      if (cfg.initial.path.empty()) issues.add("initial.path required for kind \"file\"");
    } else {
      issues.add("initial.kind must be \"gaussian\", \"mode\", or \"file\"");
    }
  }

  if (const json* bath = get_section(doc, "bathymetry", false, issues)) {
    check_keys(*bath, "bathymetry", {"kind", "amplitude", "center", "width", "ramp"}, issues);
    cfg.bathymetry.kind = get_str(*bath, "bathymetry", "kind", "flat", issues);
    cfg.bathymetry.amplitude = get_num(*bath, "bathymetry", "amplitude", 0.0, issues);
    cfg.bathymetry.center = get_num(*bath, "bathymetry", "center", length / 2, issues);
    cfg.bathymetry.width = get_num(*bath, "bathymetry", "width", 1.0, issues);
    cfg.bathymetry.ramp =
        get_num(*bath, "bathymetry", "ramp", cfg.bathymetry.width / 8, issues);

    if (cfg.bathymetry.kind == "flat") {
      // profile parameters ignored
    } else if (cfg.bathymetry.kind == "gaussian_bump" || cfg.bathymetry.kind == "bar") {
      if (!(cfg.bathymetry.width > 0.0)) issues.add("bathymetry.width must be positive");
      if (cfg.bathymetry.kind == "bar" && !(cfg.bathymetry.ramp > 0.0))
        issues.add("bathymetry.ramp must be positive");
      if (!std::isfinite(cfg.bathymetry.amplitude))
        issues.add("bathymetry.amplitude must be finite");
    } else {
      issues.add("bathymetry.kind must be \"flat\", \"gaussian_bump\", or \"bar\"");
    }
  }

  if (const json* step = get_section(doc, "stepping", true, issues)) {
    check_keys(*step, "stepping", {"t_end", "output_every", "cfl", "dt"}, issues);
    cfg.stepping.t_end = get_num(*step, "stepping", "t_end", -1.0, issues);
    cfg.stepping.output_every = get_num(*step, "stepping", "output_every", 0.0, issues);
    cfg.stepping.cfl = get_num(*step, "stepping", "cfl", 0.5, issues);
    if (step->contains("dt"))
      cfg.stepping.dt_override = get_num(*step, "stepping", "dt", 0.0, issues);

    if (!(cfg.stepping.t_end >= 0.0)) issues.add("stepping.t_end must be >= 0");
    if (!(cfg.stepping.output_every > 0.0)) issues.add("stepping.output_every must be positive");
    if (!(cfg.stepping.cfl > 0.0) || cfg.stepping.cfl > 1.0)
      issues.add("stepping.cfl must lie in (0, 1]");
    if (cfg.stepping.dt_override && !(*cfg.stepping.dt_override > 0.0))
      issues.add("stepping.dt must be positive");
  }

  if (const json* solver = get_section(doc, "solver", false, issues)) {
    check_keys(*solver, "solver", {"tol", "max_iter"}, issues);
    cfg.solver.tol = get_num(*solver, "solver", "tol", 1e-10, issues);
    cfg.solver.max_iter = get_int(*solver, "solver", "max_iter", 500, issues);
    if (!(cfg.solver.tol > 0.0)) issues.add("solver.tol must be positive");
    if (cfg.solver.max_iter < 1) issues.add("solver.max_iter must be >= 1");
  }

  if (const json* outputs = get_section(doc, "outputs", false, issues)) {
    check_keys(*outputs, "outputs", {"directory", "snapshots", "checkpoints"}, issues);
    cfg.outputs.directory = get_str(*outputs, "outputs", "directory", ".", issues);
    cfg.outputs.snapshots = get_bool(*outputs, "outputs", "snapshots", true, issues);
    cfg.outputs.checkpoints = get_bool(*outputs, "outputs", "checkpoints", false, issues);
    if (cfg.outputs.directory.empty()) issues.add("outputs.directory must be nonempty");
  }

  if (const json* diag = get_section(doc, "diagnostics", false, issues)) {
    check_keys(*diag, "diagnostics", {"sobolev_s"}, issues);
    cfg.stepping.diagnostics_s = get_num(*diag, "diagnostics", "sobolev_s", 2.0, issues);
    if (!(cfg.stepping.diagnostics_s >= 0.0)) issues.add("diagnostics.sobolev_s must be >= 0");
  }

  if (!issues.ok()) throw ConfigError(issues.joined());
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return run_config_from_json(ss.str());
}

Bathymetry build_bathymetry(Spectral& engine, const RunConfig& cfg) {
  const BathymetrySpec& b = cfg.bathymetry;
  if (b.kind == "flat") {
    Bathymetry bath = flat_bathymetry(cfg.grid);
    bath.beta = cfg.params.beta;
    return bath;
  }
  RealField profile;
  if (b.kind == "gaussian_bump")
    profile = gaussian_profile(cfg.grid, b.amplitude, b.center, b.width);
  else
    profile = bar_profile(cfg.grid, b.amplitude, b.center, b.width, b.ramp);
  return make_bathymetry(engine, std::move(profile), cfg.params.beta);
}

State build_initial_state(Spectral& engine, const RunConfig& cfg) {
  const Grid& grid = cfg.grid;
  const InitialSpec& spec = cfg.initial;

  if (spec.kind == "gaussian") {
    State s = make_rest_state(grid.n_points);
    s.zeta = gaussian_profile(grid, spec.amplitude, spec.center, spec.width);
    s.v = s.zeta;  // right-moving pulse to leading order
    return s;
  }
  if (spec.kind == "mode") {
    State s = make_rest_state(grid.n_points);
    const double k = 2.0 * std::numbers::pi * spec.mode / grid.length;
    for (int i = 0; i < grid.n_points; ++i)
      s.zeta[i] = spec.amplitude * std::cos(k * grid.dx * i);
    return s;
  }

  Checkpoint cp = read_checkpoint(spec.path);
  if (cp.grid.n_points != grid.n_points || cp.grid.length != grid.length)
    throw ConfigError("config: restart checkpoint grid does not match");
  if (cp.params.mu != cfg.params.mu || cp.params.epsilon != cfg.params.epsilon ||
      cp.params.beta != cfg.params.beta || cp.params.h0 != cfg.params.h0)
    throw ConfigError("config: restart checkpoint parameters do not match");

  // The stored bottom must agree with the profile this config builds;
  // operators use the config-built bathymetry, so a mismatch is an error.
  const Bathymetry bath = build_bathymetry(engine, cfg);
  for (int i = 0; i < grid.n_points; ++i) {
    if (cp.bottom[i] != bath.b[i])
      throw ConfigError("config: restart checkpoint bathymetry does not match");
  }
  return std::move(cp.state);
}

} // namespace wgn
