#pragma once

#include <string>
#include <vector>

namespace wgn {

// Nondimensional regime parameters. mu is the shallowness parameter,
// epsilon the wave amplitude, beta the bottom amplitude; h0 is the
// non-cavitation floor for the total depth h = 1 + epsilon*zeta - beta*b.
struct PhysParams {
  double mu = 1.0;
  double epsilon = 0.0;
  double beta = 0.0;
  double h0 = 0.5;
};

inline constexpr double default_mu_max = 1.0;

// Shallow-water admissibility: mu in (0, mu_max], epsilon and beta in [0, 1],
// h0 in (0, 1). Returns human-readable violations, empty when admissible.
// Degenerate values (mu = 0, h0 outside the run regime) are still usable by
// the operators themselves; this check guards configuration boundaries.
std::vector<std::string> validate_params(const PhysParams& p, double mu_max = default_mu_max);

} // namespace wgn
