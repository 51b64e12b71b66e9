#include "wgn/timestepper.hpp"

#include <algorithm>
#include <cmath>

namespace wgn {

namespace {

constexpr double blowup_limit = 1e6;

bool state_unstable(const State& s) {
  return !all_finite(s.zeta) || !all_finite(s.v) ||
         max_abs(s.zeta) > blowup_limit || max_abs(s.v) > blowup_limit;
}

} // namespace

double min_depth(const State& state, const Bathymetry& bath, const PhysParams& params) {
  double m = 1.0 + params.epsilon * state.zeta[0] - params.beta * bath.b[0];
  for (std::size_t i = 1; i < state.zeta.size(); ++i)
    m = std::min(m, 1.0 + params.epsilon * state.zeta[i] - params.beta * bath.b[i]);
  return m;
}

double guard_cavitation(const State& state, const Bathymetry& bath, const PhysParams& params) {
  const double m = min_depth(state, bath, params);
  if (m < params.h0)
    throw CavitationError("cavitation: min depth below floor", m);
  return m;
}

double cfl_timestep(const State& state, const Bathymetry& bath,
                    const PhysParams& params, double dx, double cfl) {
  guard_cavitation(state, bath, params);
  double max_h = 0.0;
  for (std::size_t i = 0; i < state.zeta.size(); ++i)
    max_h = std::max(max_h, 1.0 + params.epsilon * state.zeta[i] - params.beta * bath.b[i]);
  const double speed = std::sqrt(max_h) + params.epsilon * max_abs(state.v);
  return cfl * dx / speed;
}

State rk4_step(OperatorContext& ctx, const State& state, const Bathymetry& bath,
               double dt, const SolverOptions& opts, EllipticSolveReport* last_solve) {
  const std::size_t n = state.zeta.size();

  auto advanced = [&](const RhsResult& k, double c) {
    State s;
    s.zeta.resize(n);
    s.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.zeta[i] = state.zeta[i] + c * dt * k.dzeta[i];
      s.v[i] = state.v[i] + c * dt * k.dv[i];
    }
    s.t = state.t + c * dt;
    return s;
  };

  const RhsResult k1 = evolution_rhs(ctx, state, bath, opts);
  const RhsResult k2 = evolution_rhs(ctx, advanced(k1, 0.5), bath, opts);
  const RhsResult k3 = evolution_rhs(ctx, advanced(k2, 0.5), bath, opts);
  const RhsResult k4 = evolution_rhs(ctx, advanced(k3, 1.0), bath, opts);
  if (last_solve) *last_solve = k4.solve;

  State next;
  next.zeta.resize(n);
  next.v.resize(n);
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    next.zeta[i] = state.zeta[i] +
                   w * (k1.dzeta[i] + 2.0 * k2.dzeta[i] + 2.0 * k3.dzeta[i] + k4.dzeta[i]);
    next.v[i] = state.v[i] + w * (k1.dv[i] + 2.0 * k2.dv[i] + 2.0 * k3.dv[i] + k4.dv[i]);
  }
  next.t = state.t + dt;
  return next;
}

RunOutcome run_simulation(OperatorContext& ctx, State state, const Bathymetry& bath,
                          const StepConfig& cfg, const SolverOptions& opts,
                          const Sinks& sinks) {
  const double t_end = cfg.t_end;
  // Landing tolerance: times within t_eps of a sample point count as hit.
  const double t_eps = 1e-12 * std::max(1.0, std::abs(t_end));

  EllipticSolveReport last_solve{};
  auto emit = [&](const State& s) {
    if (!sinks.on_sample) return;
    const DiagnosticsRecord rec =
        collect_diagnostics(ctx, s, bath, cfg.diagnostics_s, last_solve.iterations);
    sinks.on_sample(rec, s);
  };

  try {
    guard_cavitation(state, bath, ctx.params());
  } catch (const CavitationError&) {
    return {std::move(state), RunStatus::cavitation_abort, 0};
  }

  emit(state);

  long steps = 0;
  double next_sample = state.t + cfg.output_every;
  while (state.t < t_end - t_eps) {
    double dt;
    try {
      dt = cfg.dt_override ? *cfg.dt_override
                           : cfl_timestep(state, bath, ctx.params(), ctx.engine().grid().dx, cfg.cfl);
    } catch (const CavitationError&) {
      return {std::move(state), RunStatus::cavitation_abort, steps};
    }
    dt = std::min(dt, t_end - state.t);
    if (cfg.output_every > 0.0) dt = std::min(dt, next_sample - state.t);

    State next;
    try {
      next = rk4_step(ctx, state, bath, dt, opts, &last_solve);
    } catch (const CavitationError&) {
      return {std::move(state), RunStatus::cavitation_abort, steps};
    } catch (const SolverError&) {
      return {std::move(state), RunStatus::solver_abort, steps};
    }
    ++steps;

    if (state_unstable(next)) {
      return {std::move(next), RunStatus::instability_abort, steps};
    }
    state = std::move(next);

    const bool at_sample = cfg.output_every > 0.0 && state.t >= next_sample - t_eps;
    const bool at_end = state.t >= t_end - t_eps;
    if (at_sample || at_end) {
      emit(state);
      while (cfg.output_every > 0.0 && next_sample <= state.t + t_eps)
        next_sample += cfg.output_every;
    }
  }

  return {std::move(state), RunStatus::completed, steps};
}

} // namespace wgn
