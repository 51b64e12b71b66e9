#pragma once

#include <functional>
#include <optional>

#include "wgn/diagnostics.hpp"
#include "wgn/operators.hpp"

namespace wgn {

struct StepConfig {
  double cfl = 0.5;
  std::optional<double> dt_override;  // bypasses the CFL heuristic when set
  double t_end = 0.0;
  double output_every = 0.0;          // sample cadence; > 0 required by run()
  double diagnostics_s = 2.0;         // Sobolev index for sampled records
};

enum class RunStatus { completed, cavitation_abort, solver_abort, instability_abort };

struct RunOutcome {
  State final_state;
  RunStatus status = RunStatus::completed;
  long steps_taken = 0;
};

// Output channels; any of them may be left empty. on_sample fires at t = 0,
// at every output_every multiple (hit exactly, the step size is clamped to
// land on sample times), and at t_end.
struct Sinks {
  std::function<void(const DiagnosticsRecord&, const State&)> on_sample;
};

// Smallest depth over the grid.
double min_depth(const State& state, const Bathymetry& bath, const PhysParams& params);

// Returns min depth; throws CavitationError when it is strictly below h0.
// Equality with h0 is admissible.
double guard_cavitation(const State& state, const Bathymetry& bath, const PhysParams& params);

// Advective step-size heuristic cfl * dx / (sqrt(max h) + epsilon * max |v|).
double cfl_timestep(const State& state, const Bathymetry& bath,
                    const PhysParams& params, double dx, double cfl);

// One classical RK4 step. Every stage evaluates the full right-hand side,
// so cavitation at an intermediate stage surfaces as CavitationError.
// last_solve, when non-null, receives the report of the final stage solve.
State rk4_step(OperatorContext& ctx, const State& state, const Bathymetry& bath,
               double dt, const SolverOptions& opts = {},
               EllipticSolveReport* last_solve = nullptr);

// Drives rk4_step from state.t to cfg.t_end, clamping dt to land exactly on
// sample times and on t_end. Guard violations and non-finite or exploding
// fields (max |zeta|, |v| above 1e6) end the run with the matching abort
// status instead of propagating exceptions; the state at the abort is kept
// for post-mortem output.
RunOutcome run_simulation(OperatorContext& ctx, State state, const Bathymetry& bath,
                          const StepConfig& cfg, const SolverOptions& opts = {},
                          const Sinks& sinks = {});

} // namespace wgn
