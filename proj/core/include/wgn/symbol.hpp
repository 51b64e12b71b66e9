#pragma once

namespace wgn {

// Fourier symbol of the full-dispersion weight, evaluated at frequency xi
// for shallowness parameter mu >= 0 and raised to the given power:
//
//   F(xi) = 3/t^2 * (t/tanh(t) - 1),   t = sqrt(mu)*|xi|.
//
// F is even, takes values in (0, 1], equals 1 at xi = 0, decreases in |xi|,
// and decays like 3/t for large t. Below t = 1e-2 the Taylor expansion
// 1 - t^2/15 + 2 t^4/315 is used; at the switch point both branches agree
// to full double precision.
double whitham_symbol(double xi, double mu, double power);

// Symbol closure for table building and generic multiplier application.
struct MultiplierSymbol {
  double power = 1.0;
  double mu = 1.0;
  double operator()(double xi) const { return whitham_symbol(xi, mu, power); }
};

} // namespace wgn
