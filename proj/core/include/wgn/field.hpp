#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace wgn {

// Real-valued samples on the collocation grid, index j <-> x_j = j*dx.
using RealField = std::vector<double>;

// Fourier coefficients in FFT layout {0, 1, ..., n/2-1, -n/2, ..., -1},
// normalized so coefficient 0 is the mean of the field.
using SpectrumField = std::vector<std::complex<double>>;

inline bool all_finite(const RealField& f) {
  for (double x : f)
    if (!std::isfinite(x)) return false;
  return true;
}

inline double max_abs(const RealField& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

inline double min_value(const RealField& f) {
  double m = f.empty() ? 0.0 : f[0];
  for (double x : f) m = std::min(m, x);
  return m;
}

} // namespace wgn
