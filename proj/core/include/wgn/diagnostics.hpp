#pragma once

#include <vector>

#include "wgn/operators.hpp"

namespace wgn {

// One sampled row of the diagnostics series. y_norm is the natural energy
// space norm sqrt( |zeta|_{H^s}^2 + |v|_{X^s_mu}^2 ); cg_iterations is the
// iteration count of the most recent elliptic solve (0 before any step).
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double e0 = 0.0;
  double es = 0.0;
  double min_h = 0.0;
  double y_norm = 0.0;
  int cg_iterations = 0;
};

// Energy functional at Sobolev index s,
//   E_s = |J^s zeta|_{L2}^2 + < J^s v, (h + mu h T) J^s v >,   J = (1 - d_x^2)^{1/2}.
// Nonnegative whenever min h >= h0 > 0; throws CavitationError below the floor.
double sobolev_energy(OperatorContext& ctx, const State& state,
                      const Bathymetry& bath, double s);

double y_norm(Spectral& engine, const State& state, double s, double mu);

DiagnosticsRecord collect_diagnostics(OperatorContext& ctx, const State& state,
                                      const Bathymetry& bath, double s,
                                      int cg_iterations);

// Exact phase speed of the full water-wave problem:
//   omega(xi) = |xi| * sqrt( tanh(t)/t ),   t = sqrt(mu) |xi|.
double dispersion_water_waves(double xi, double mu);

// One member of the three-parameter Green-Naghdi family.
struct GnParams {
  double theta = -1.0;
  double alpha = 1.0;
  double gamma = 1.0;
};

// omega(xi) = |xi| * sqrt( (1 + mu(theta+gamma)xi^2/3)(1 + mu(alpha-1)xi^2/3)
//                        / ((1 + mu gamma xi^2/3)(1 + mu(alpha+theta)xi^2/3) ) ).
// The classical model is (theta, alpha, gamma) = (-1, 1, 1), which reduces to
// |xi| / sqrt(1 + mu xi^2 / 3). Throws std::domain_error (naming the
// offending xi) when the radicand is negative or the denominator vanishes.
double dispersion_green_naghdi(double xi, double mu, const GnParams& p);

struct DispersionRow {
  double xi = 0.0;
  double omega_ww = 0.0;
  std::vector<double> omega_gn;      // one entry per parameter set
  double ww_over_xi2 = 0.0;          // omega/xi^2, the quantity plotted in
  std::vector<double> gn_over_xi2;   // dispersion-curve comparisons
};

std::vector<DispersionRow> dispersion_table(double mu, const std::vector<double>& xi_grid,
                                            const std::vector<GnParams>& sets);

// Largest L-infinity distance between the surface elevations of the full
// model and the classical Green-Naghdi model (kind_b) evolved from the same
// initial data, sampled at n_samples uniform times in (0, t_end]. Both runs
// use the same fixed step, a divisor of the sample spacing at or below the
// initial CFL step. Scales like mu^2 for smooth data.
double model_gap(const Grid& grid, const State& initial, const Bathymetry& bath,
                 const PhysParams& params, double t_end,
                 const SolverOptions& opts = {}, int n_samples = 16,
                 DispersionKind kind_a = DispersionKind::full,
                 DispersionKind kind_b = DispersionKind::classical);

} // namespace wgn
