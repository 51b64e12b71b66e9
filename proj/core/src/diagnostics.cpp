#include "wgn/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "wgn/timestepper.hpp"

namespace wgn {

double sobolev_energy(OperatorContext& ctx, const State& state,
                      const Bathymetry& bath, double s) {
  Spectral& eng = ctx.engine();
  RealField h = depth(ctx, state.zeta, bath);
  const double min_h = min_value(h);
  if (min_h < ctx.params().h0)
    throw CavitationError("energy: depth below the cavitation floor", min_h);

  RealField jz, jv;
  if (s == 0.0) {
    jz = state.zeta;
    jv = state.v;
  } else {
    std::vector<double> bessel(eng.grid().n_points);
    for (int i = 0; i < eng.grid().n_points; ++i) {
      const double k = eng.grid().wavenumbers[i];
      bessel[i] = std::pow(1.0 + k * k, s / 2.0);
    }
    jz = eng.apply_multiplier(state.zeta, bessel);
    jv = eng.apply_multiplier(state.v, bessel);
  }

  const double ez = eng.l2_norm(jz);
  const RealField tv = apply_elliptic(ctx, h, bath, jv);
  return ez * ez + eng.inner(jv, tv);
}

double y_norm(Spectral& engine, const State& state, double s, double mu) {
  const double nz = engine.sobolev_norm(state.zeta, s);
  const double nv = engine.x_mu_norm(state.v, s, mu);
  return std::sqrt(nz * nz + nv * nv);
}

DiagnosticsRecord collect_diagnostics(OperatorContext& ctx, const State& state,
                                      const Bathymetry& bath, double s,
                                      int cg_iterations) {
  DiagnosticsRecord rec;
  rec.t = state.t;
  rec.mass = ctx.engine().mean(state.zeta);
  rec.e0 = sobolev_energy(ctx, state, bath, 0.0);
  rec.es = sobolev_energy(ctx, state, bath, s);
  rec.min_h = min_depth(state, bath, ctx.params());
  rec.y_norm = y_norm(ctx.engine(), state, s, ctx.params().mu);
  rec.cg_iterations = cg_iterations;
  return rec;
}

namespace {

// tanh(t)/t with the small-argument expansion 1 - t^2/3 + 2 t^4/15.
double tanh_over_t(double t) {
  if (t < 1e-2) {
    const double t2 = t * t;
    return 1.0 - t2 / 3.0 + (2.0 / 15.0) * t2 * t2;
  }
  return std::tanh(t) / t;
}

} // namespace

double dispersion_water_waves(double xi, double mu) {
  const double a = std::abs(xi);
  return a * std::sqrt(tanh_over_t(std::sqrt(mu) * a));
}

double dispersion_green_naghdi(double xi, double mu, const GnParams& p) {
  const double x2 = xi * xi;
  const double num = (1.0 + mu * (p.theta + p.gamma) * x2 / 3.0) *
                     (1.0 + mu * (p.alpha - 1.0) * x2 / 3.0);
  const double den = (1.0 + mu * p.gamma * x2 / 3.0) *
                     (1.0 + mu * (p.alpha + p.theta) * x2 / 3.0);
  if (den == 0.0 || num / den < 0.0) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "dispersion: negative or undefined radicand at xi = %.17g", xi);
    throw std::domain_error(msg);
  }
  return std::abs(xi) * std::sqrt(num / den);
}

std::vector<DispersionRow> dispersion_table(double mu, const std::vector<double>& xi_grid,
                                            const std::vector<GnParams>& sets) {
  std::vector<DispersionRow> rows;
  rows.reserve(xi_grid.size());
  for (double xi : xi_grid) {
    DispersionRow row;
    row.xi = xi;
    row.omega_ww = dispersion_water_waves(xi, mu);
    const double x2 = xi * xi;
    row.ww_over_xi2 = x2 > 0.0 ? row.omega_ww / x2 : 0.0;
    for (const GnParams& p : sets) {
      const double w = dispersion_green_naghdi(xi, mu, p);
      row.omega_gn.push_back(w);
      row.gn_over_xi2.push_back(x2 > 0.0 ? w / x2 : 0.0);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double model_gap(const Grid& grid, const State& initial, const Bathymetry& bath,
                 const PhysParams& params, double t_end, const SolverOptions& opts,
                 int n_samples, DispersionKind kind_a, DispersionKind kind_b) {
  if (!(t_end > 0.0)) throw std::invalid_argument("model_gap: t_end must be positive");
  if (n_samples < 1) throw std::invalid_argument("model_gap: n_samples must be positive");

  Spectral engine_a(grid), engine_b(grid);
  OperatorContext ctx_a(engine_a, params, kind_a);
  OperatorContext ctx_b(engine_b, params, kind_b);

  // Shared fixed step: an exact divisor of the sample spacing, at or below
  // the initial CFL step, so both runs sample at identical times.
  const double dt0 = cfl_timestep(initial, bath, params, grid.dx, 0.5);
  const double spacing = t_end / n_samples;
  const int m = std::max(1, static_cast<int>(std::ceil(spacing / dt0 - 1e-12)));
  const double dt = spacing / m;

  State sa = initial, sb = initial;
  double gap = 0.0;
  for (int sample = 0; sample < n_samples; ++sample) {
    for (int j = 0; j < m; ++j) {
      sa = rk4_step(ctx_a, sa, bath, dt, opts);
      sb = rk4_step(ctx_b, sb, bath, dt, opts);
    }
    if (!all_finite(sa.zeta) || !all_finite(sb.zeta))
      throw std::runtime_error("model_gap: evolution became non-finite");
    double d = 0.0;
    for (std::size_t i = 0; i < sa.zeta.size(); ++i)
      d = std::max(d, std::abs(sa.zeta[i] - sb.zeta[i]));
    gap = std::max(gap, d);
  }
  return gap;
}

} // namespace wgn
