#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wgn {

// Parameter sweep driving the randomized verification campaigns. Fields are
// drawn with independent unit-normal coefficients on modes |j| <=
// band_fraction * n/2 (band_fraction in (0, 2/3] so every draw survives
// truncation). Campaigns fan trials out over std::thread workers; the
// WGN_THREADS environment variable caps the worker count. Trial seeds are
// derived from (seed, trial index), so reports are byte-stable for a fixed
// spec regardless of threading.
struct SweepSpec {
  std::vector<double> mu_values = {1.0, 0.1, 0.01};
  std::vector<double> epsilon_values = {0.0, 0.1, 0.5};
  std::vector<double> beta_values = {0.0, 0.1, 0.5};
  int n_fields = 100;
  std::uint64_t seed = 20260814;
  double band_fraction = 0.5;
  int n_points = 128;
  double length = 6.283185307179586476925286766559;
  double threshold_scale = 1.0;  // scales pass thresholds; 0 forces failures
};

struct PropertyReport {
  std::string name;
  int trials = 0;
  double worst_ratio = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

// Multiplier-estimate sweeps at s = 2. Each report's threshold is twice the
// supremum of the corresponding symbol bound over the kept grid modes and
// swept mu values, so a pass certifies the field ratios sit inside the
// single-mode envelope.
//   norm_equivalence_upper/lower : x_mu norm vs the symbol-weighted bound
//   half_inverse_smoothing       : |F^{-1/2} f|_{H^s} vs |f|_{X^s_mu}
//   kill_full_derivative         : sqrt(mu) F |d_x f| gains one derivative
//   kill_half_derivative         : mu^{1/4} F^{1/2} gains half a derivative
//   half_symbol_minus_identity   : |(F^{1/2}-1) f|_{H^s} vs mu |f|_{H^{s+2}}
std::vector<PropertyReport> check_symbol_estimates(const SweepSpec& spec);

// Randomized operator-level contracts over the (mu, epsilon, beta) sweep:
// self-adjointness and coercivity of the weighted elliptic operator,
// solve/apply round-trips (including the mu = 0 closed form), and immediate
// preconditioner convergence in the flat constant-depth case.
std::vector<PropertyReport> check_operator_contracts(const SweepSpec& spec);

// Fixed-scenario convergence studies: RK4 temporal order against the exact
// linear single-mode solution, spectral accuracy under grid doubling, and
// the mu^2 trend of the gap to the classical Green-Naghdi model. Orders are
// encoded as worst_ratio = |measured - target|.
std::vector<PropertyReport> convergence_orders(const SweepSpec& spec);

bool all_passed(const std::vector<PropertyReport>& reports);

std::string reports_to_json(const std::vector<PropertyReport>& reports);

// Parses a SweepSpec from JSON text; unknown keys are rejected. Throws
// std::runtime_error with a descriptive message on malformed input.
SweepSpec sweep_spec_from_json(const std::string& text);

} // namespace wgn
