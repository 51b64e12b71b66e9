// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// criteria hold. Tolerances are pinned here and are not configurable.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "test_util.hpp"
#include "wgn/commands.hpp"
#include "wgn/diagnostics.hpp"
#include "wgn/run_config.hpp"
#include "wgn/timestepper.hpp"
#include "wgn/verification.hpp"

using namespace wgn;
using test::pi;

namespace {

using Result = std::pair<bool, std::string>;

std::string fmt(const char* pattern, ...) {
  char buf[256];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

// 1. The dispersive weight takes the documented values at the anchor points.
Result symbol_anchor_values() {
  for (double mu : {1.0, 0.01})
    for (double p : {1.0, 0.5, -0.5})
      if (whitham_symbol(0.0, mu, p) != 1.0)
        return {false, "weight at the origin differs from 1"};
  const double half = whitham_symbol(1.0, 1.0, 0.5);
  if (std::abs(half - 0.969075) > 1e-6)
    return {false, fmt("sqrt weight at t=1 is %.9f, expected 0.969075 +- 1e-6", half)};
  return {true, fmt("sqrt weight at t=1 = %.9f, origin value exact", half)};
}

// 2. Constant depth turns the weighted operator into the exact symbol
//    t/tanh(t) on every kept mode.
Result flat_elliptic_identity() {
  const Grid g = make_grid(64, 2.0 * pi);
  Spectral eng(g);
  OperatorContext ctx(eng, {1.0, 0.0, 0.0, 0.5});
  const Bathymetry flat = flat_bathymetry(g);
  const RealField ones(g.n_points, 1.0);

  double worst = 0.0;
  for (int k = 1; k <= g.dealias_cutoff; ++k) {
    RealField f(g.n_points);
    for (int i = 0; i < g.n_points; ++i) f[i] = std::cos(k * g.dx * i);
    const double sigma = k / std::tanh(double(k));
    const RealField af = apply_elliptic(ctx, ones, flat, f);
    for (int i = 0; i < g.n_points; ++i)
      worst = std::max(worst, std::abs(af[i] - sigma * f[i]) / sigma);
  }
  if (worst > 1e-12)
    return {false, fmt("worst kept-mode deviation %.3e exceeds 1e-12", worst)};

  RealField c1(g.n_points);
  for (int i = 0; i < g.n_points; ++i) c1[i] = std::cos(g.dx * i);
  const double factor = apply_elliptic(ctx, ones, flat, c1)[0];
  if (std::abs(factor - 1.3130353) > 1e-6)
    return {false, fmt("unit-mode factor %.9f, expected 1.3130353 +- 1e-6", factor)};
  return {true, fmt("worst deviation %.3e, unit-mode factor %.9f", worst, factor)};
}

// 3. A linear standing mode returns to its initial profile after one period
//    and oscillates at the full-dispersion frequency.
Result standing_wave_period() {
  const double omega_unit = dispersion_water_waves(1.0, 1.0);
  if (std::abs(omega_unit - 0.872694) > 1e-6)
    return {false, fmt("frequency at xi=1 is %.9f, expected 0.872694 +- 1e-6", omega_unit)};

  const Grid g = make_grid(256, 2.0 * pi);
  Spectral eng(g);
  OperatorContext ctx(eng, {1.0, 0.0, 0.0, 0.5});
  const Bathymetry flat = flat_bathymetry(g);
  const test::LinearMode mode(2.0, 1.0);
  const double period = 2.0 * pi / mode.omega;

  State st = mode.at(g, 0.0);
  const State initial = st;
  const int steps = 2000;
  const double dt = period / steps;
  for (int i = 0; i < steps; ++i) st = rk4_step(ctx, st, flat, dt);
  const double err = std::max(test::max_abs_diff(st.zeta, initial.zeta),
                              test::max_abs_diff(st.v, initial.v));
  if (err > 1e-8)
    return {false, fmt("period-return error %.3e exceeds 1e-8", err)};
  return {true, fmt("period-return error %.3e, frequency %.9f", err, omega_unit)};
}

// 4. Switching the dispersive weight off reproduces the classical model:
//    the dispersion curve in closed form and the operators against an
//    independently assembled route.
Result classical_degeneration() {
  double worst_curve = 0.0;
  for (double mu : {1.0, 0.1}) {
    for (int i = 0; i <= 400; ++i) {
      const double xi = 10.0 * i / 400;
      const double direct = xi / std::sqrt(1.0 + mu * xi * xi / 3.0);
      const double got = dispersion_green_naghdi(xi, mu, {-1.0, 1.0, 1.0});
      worst_curve = std::max(worst_curve, std::abs(got - direct) / std::max(1.0, direct));
    }
  }
  if (worst_curve > 1e-12)
    return {false, fmt("dispersion curve deviation %.3e exceeds 1e-12", worst_curve)};

  const Grid g = make_grid(64, 2.0 * pi);
  Spectral eng(g);
  OperatorContext ctx(eng, {0.8, 0.3, 0.4, 0.5}, DispersionKind::classical);
  std::mt19937_64 rng(101);
  double worst_op = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    RealField bottom = test::random_field(g, rng, 10, 1.0);
    Bathymetry bath = make_bathymetry(eng, bottom, 0.4);
    const RealField zeta = test::random_field(g, rng, 15, 1.0);
    RealField h(g.n_points);
    for (int i = 0; i < g.n_points; ++i) h[i] = 1.0 + 0.3 * zeta[i] - 0.4 * bottom[i];
    const RealField v = test::random_field(g, rng, 15, 1.0);

    worst_op = std::max(worst_op, test::rel_diff(apply_dispersive(ctx, h, bath, v),
                                                 test::ref_gn_dispersive(eng, h, bath, v)));
    worst_op = std::max(worst_op, test::rel_diff(quadratic_q(ctx, h, v),
                                                 test::ref_gn_quadratic_q(eng, h, v)));
    worst_op = std::max(worst_op, test::rel_diff(quadratic_qb(ctx, h, bath, v),
                                                 test::ref_gn_quadratic_qb(eng, h, bath, v)));
  }
  if (worst_op > 1e-12)
    return {false, fmt("operator deviation %.3e exceeds 1e-12 over 100 draws", worst_op)};
  return {true, fmt("curve deviation %.3e, operator deviation %.3e", worst_curve, worst_op)};
}

// 5. The iterative solve inverts the weighted operator on random media, and
//    constant depth converges immediately.
Result elliptic_solver_roundtrip() {
  const Grid g = make_grid(128, 2.0 * pi);
  Spectral eng(g);
  std::mt19937_64 rng(102);
  const double mus[3] = {1.0, 0.1, 0.01};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    OperatorContext ctx(eng, {mus[trial % 3], 0.3, 0.15, 0.5});
    RealField bottom = test::random_field(g, rng, 10, 1.0);
    Bathymetry bath = make_bathymetry(eng, bottom, 0.15);
    const RealField zeta = test::random_field(g, rng, 15, 1.0);
    RealField h(g.n_points);
    for (int i = 0; i < g.n_points; ++i) h[i] = 1.0 + 0.3 * zeta[i] - 0.15 * bottom[i];
    const RealField f = test::random_field(g, rng, 40, 1.0);
    auto [x, rep] = solve_elliptic(ctx, h, bath, f, {1e-10, 500});
    if (!rep.converged) return {false, fmt("solve failed to converge on trial %d", trial)};
    worst = std::max(worst, test::rel_diff(apply_elliptic(ctx, h, bath, x), f));
  }
  if (worst > 1e-8)
    return {false, fmt("worst round-trip error %.3e exceeds 1e-8", worst)};

  OperatorContext flat_ctx(eng, {0.5, 0.0, 0.0, 0.5});
  const Bathymetry flat = flat_bathymetry(g);
  const RealField ones(g.n_points, 1.0);
  int worst_iter = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const RealField f = test::random_field(g, rng, 40, 1.0);
    auto [x, rep] = solve_elliptic(flat_ctx, ones, flat, f, {1e-10, 500});
    if (!rep.converged) return {false, "constant-depth solve failed to converge"};
    worst_iter = std::max(worst_iter, rep.iterations);
  }
  if (worst_iter > 2)
    return {false, fmt("constant depth needed %d iterations, limit 2", worst_iter)};
  return {true, fmt("worst round-trip %.3e, constant-depth iterations <= %d", worst, worst_iter)};
}

// 6. A pulse crossing a submerged bar conserves the mean elevation to
//    round-off: drift below 1e-12 per unit time at every sample.
Result mass_conservation() {
  const Grid g = make_grid(256, 2.0 * pi);
  Spectral eng(g);
  const PhysParams par{0.01, 0.1, 0.1, 0.5};
  OperatorContext ctx(eng, par);
  Bathymetry bath = make_bathymetry(eng, bar_profile(g, 1.0, pi, 1.5, 0.25), 0.1);
  State st = make_rest_state(g.n_points);
  st.zeta = gaussian_profile(g, 1.0, pi, 0.35);
  st.v = st.zeta;

  StepConfig cfg;
  cfg.t_end = 5.0;
  cfg.output_every = 0.5;
  double mass0 = 0.0;
  double worst = 0.0;
  bool first = true;
  Sinks sinks;
  sinks.on_sample = [&](const DiagnosticsRecord& rec, const State&) {
    if (first) {
      mass0 = rec.mass;
      first = false;
      return;
    }
    worst = std::max(worst, std::abs(rec.mass - mass0) / std::max(1.0, rec.t));
  };
  const RunOutcome out = run_simulation(ctx, std::move(st), bath, cfg, {}, sinks);
  if (out.status != RunStatus::completed)
    return {false, "run aborted before t_end"};
  if (worst > 1e-12)
    return {false, fmt("worst mass drift %.3e per unit time exceeds 1e-12", worst)};
  return {true, fmt("worst mass drift %.3e per unit time over t in [0, 5]", worst)};
}

// 7. Step-size halving studies against a dt/64 reference put the temporal
//    order in [3.8, 4.2].
Result temporal_order() {
  const Grid g = make_grid(64, 2.0 * pi);
  Spectral eng(g);
  OperatorContext ctx(eng, {1.0, 0.0, 0.0, 0.5});
  const Bathymetry flat = flat_bathymetry(g);
  const test::LinearMode mode(2.0, 1.0);
  const double t_end = 0.4 * 2.0 * pi / mode.omega;

  auto evolve = [&](int steps) {
    State st = mode.at(g, 0.0);
    const double dt = t_end / steps;
    for (int i = 0; i < steps; ++i) st = rk4_step(ctx, st, flat, dt);
    return st;
  };
  const State ref = evolve(20 * 64);
  double err[3];
  for (int j = 0; j < 3; ++j) {
    const State st = evolve(20 << j);
    err[j] = std::max(test::max_abs_diff(st.zeta, ref.zeta),
                      test::max_abs_diff(st.v, ref.v));
  }
  const double p1 = std::log2(err[0] / err[1]);
  const double p2 = std::log2(err[1] / err[2]);
  if (p1 < 3.8 || p1 > 4.2 || p2 < 3.8 || p2 > 4.2)
    return {false, fmt("measured orders %.3f, %.3f leave [3.8, 4.2]", p1, p2)};
  return {true, fmt("measured orders %.3f, %.3f", p1, p2)};
}

// 8. The distance to the classical model shrinks quadratically in mu:
//    log2 of successive gap ratios within [1.7, 2.3] for mu halving.
Result model_gap_trend() {
  const Grid g = make_grid(256, 8.0 * pi);
  Spectral eng(g);
  Bathymetry bath = make_bathymetry(eng, bar_profile(g, 1.0, 4.0 * pi, 6.0, 1.0), 0.1);
  State st = make_rest_state(g.n_points);
  st.zeta = gaussian_profile(g, 1.0, 4.0 * pi, 1.2);
  st.v = st.zeta;

  const double mus[3] = {4e-2, 2e-2, 1e-2};
  double gaps[3];
  for (int i = 0; i < 3; ++i) {
    const PhysParams par{mus[i], 0.1, 0.1, 0.5};
    gaps[i] = model_gap(g, st, bath, par, 1.0);
    if (!(gaps[i] > 0.0)) return {false, fmt("gap at mu=%.0e vanished", mus[i])};
  }
  const double r1 = std::log2(gaps[0] / gaps[1]);
  const double r2 = std::log2(gaps[1] / gaps[2]);
  if (r1 < 1.7 || r1 > 2.3 || r2 < 1.7 || r2 > 2.3)
    return {false, fmt("log2 gap ratios %.3f, %.3f leave [1.7, 2.3]", r1, r2)};
  return {true, fmt("log2 gap ratios %.3f, %.3f", r1, r2)};
}

// 9. The Sobolev energy is nonnegative on admissible states and equivalent
//    to the reference squared norm with one constant pair across the sweep.
Result energy_equivalence() {
  const Grid g = make_grid(64, 2.0 * pi);
  Spectral eng(g);
  std::mt19937_64 rng(103);
  const double mus[3] = {1.0, 0.1, 0.01};
  double c1 = 1e300, c2 = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double mu = mus[trial % 3];
    OperatorContext ctx(eng, {mu, 0.3, 0.15, 0.5});
    RealField bottom = test::random_field(g, rng, 10, 1.0);
    Bathymetry bath = make_bathymetry(eng, bottom, 0.15);
    State st = make_rest_state(g.n_points);
    st.zeta = test::random_field(g, rng, 15, 1.0);
    st.v = test::random_field(g, rng, 15, 1.0);

    const double e = sobolev_energy(ctx, st, bath, 2.0);
    if (!(e >= 0.0)) return {false, fmt("negative energy %.3e on trial %d", e, trial)};
    const double y = y_norm(eng, st, 2.0, mu);
    const double ratio = e / (y * y);
    c1 = std::min(c1, ratio);
    c2 = std::max(c2, ratio);
  }
  if (!(c1 > 0.0) || c2 / c1 > 50.0)
    return {false, fmt("equivalence constants c1=%.3e c2=%.3e spread beyond 50x", c1, c2)};
  return {true, fmt("200 states nonnegative, equivalence band [%.3f, %.3f]", c1, c2)};
}

// 10. The randomized multiplier-estimate campaign passes at defaults, and
//     the weight-minus-identity bound holds with a mu-independent constant.
Result symbol_estimate_campaign() {
  SweepSpec spec;
  const auto reports = check_symbol_estimates(spec);
  if (!all_passed(reports)) {
    for (const auto& r : reports)
      if (!r.passed)
        return {false, fmt("estimate \"%s\" failed: ratio %.3e > %.3e",
                           r.name.c_str(), r.worst_ratio, r.threshold)};
  }

  SweepSpec small;
  small.mu_values = {0.1, 0.01, 0.001};
  const auto deep = check_symbol_estimates(small);
  for (const auto& r : deep) {
    if (r.name != "half_symbol_minus_identity") continue;
    if (!r.passed || r.threshold > 0.1)
      return {false, fmt("identity-defect bound not mu-uniform: ratio %.3e, threshold %.3e",
                         r.worst_ratio, r.threshold)};
    return {true, fmt("defaults all passed; identity defect ratio %.3e under mu-free bound %.3e",
                      r.worst_ratio, r.threshold)};
  }
  return {false, "identity-defect report missing"};
}

// 11. Guard rails: an engineered depth collapse exits with the cavitation
//     code and leaves a post-mortem snapshot; depth exactly at the floor is
//     admissible and evolves.
Result guard_rails() {
  namespace fs = std::filesystem;
  const auto dir = test::temp_dir("acceptance_guard");
  const std::string out = (dir / "out").string();
  const std::string cfgpath = (dir / "run.json").string();
  test::write_text(cfgpath, R"({
    "grid": { "n_points": 64, "length": 6.283185307179586 },
    "params": { "mu": 0.5, "epsilon": 0.1, "beta": 0.6, "h0": 0.5 },
    "initial": { "kind": "gaussian", "amplitude": 0.1, "width": 0.4 },
    "bathymetry": { "kind": "bar", "amplitude": 1.0, "center": 3.141592653589793,
                    "width": 1.5, "ramp": 0.25 },
    "stepping": { "t_end": 1.0, "output_every": 0.5 },
    "outputs": { "directory": ")" + out + R"(", "snapshots": false }
  })");
  const int code = cmd_simulate(cfgpath);
  if (code != exit_cavitation)
    return {false, fmt("collapse run exited with %d, expected %d", code, int(exit_cavitation))};
  if (!fs::exists(fs::path(out) / "snapshot_t0.000000.csv"))
    return {false, "post-mortem snapshot missing after cavitation abort"};

  const Grid g = make_grid(32, 2.0 * pi);
  Spectral eng(g);
  const PhysParams par{1.0, 0.5, 0.0, 0.5};
  OperatorContext ctx(eng, par);
  const Bathymetry flat = flat_bathymetry(g);
  State st = make_rest_state(g.n_points);
  for (double& z : st.zeta) z = -1.0;  // h = h0 exactly, everywhere
  StepConfig cfg;
  cfg.t_end = 0.2;
  cfg.output_every = 0.1;
  const RunOutcome res = run_simulation(ctx, std::move(st), flat, cfg);
  if (res.status != RunStatus::completed)
    return {false, "boundary-depth run did not complete"};
  return {true, "cavitation exit code and post-mortem present; floor equality admissible"};
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria = {
      {"dispersive weight anchor values", symbol_anchor_values},
      {"flat-depth elliptic symbol identity", flat_elliptic_identity},
      {"standing-wave period return", standing_wave_period},
      {"classical-model degeneration", classical_degeneration},
      {"elliptic solver round-trip", elliptic_solver_roundtrip},
      {"mass conservation over a bar", mass_conservation},
      {"fourth-order time stepping", temporal_order},
      {"quadratic model-gap trend in mu", model_gap_trend},
      {"energy positivity and norm equivalence", energy_equivalence},
      {"randomized multiplier-estimate campaign", symbol_estimate_campaign},
      {"cavitation and floor guard rails", guard_rails},
  };

  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].run();
    } catch (const std::exception& e) {
      r = {false, std::string("unexpected exception: ") + e.what()};
    }
    std::printf("[%s] %2zu/%zu %s: %s\n", r.first ? "PASS" : "FAIL", i + 1,
                criteria.size(), criteria[i].name, r.second.c_str());
    std::fflush(stdout);
    if (r.first) ++passed;
  }
  std::printf("acceptance: %d/%zu criteria passed\n", passed, criteria.size());
  return passed == int(criteria.size()) ? 0 : 1;
}
