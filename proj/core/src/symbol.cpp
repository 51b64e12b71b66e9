#include "wgn/symbol.hpp"

#include <cmath>

namespace wgn {

namespace {
constexpr double series_cut = 1e-2;
}

double whitham_symbol(double xi, double mu, double power) {
  const double t = std::sqrt(mu) * std::abs(xi);
  double base;
  if (t < series_cut) {
    // 3/t^2 (t/tanh t - 1) = 1 - t^2/15 + 2 t^4/315 + O(t^6); the dropped
    // term is below 1e-15 relative at the cut.
    const double t2 = t * t;
    base = 1.0 - t2 / 15.0 + (2.0 / 315.0) * t2 * t2;
  } else {
    base = 3.0 / (t * t) * (t / std::tanh(t) - 1.0);
  }
  if (power == 1.0) return base;
  if (power == 0.5) return std::sqrt(base);
  return std::pow(base, power);
}

} // namespace wgn
