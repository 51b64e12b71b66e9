#include "wgn/bathymetry.hpp"

#include <cmath>
#include <stdexcept>

#include "wgn/spectral.hpp"

namespace wgn {

Bathymetry make_bathymetry(Spectral& engine, RealField bottom, double beta) {
  if (bottom.size() != static_cast<std::size_t>(engine.grid().n_points))
    throw std::invalid_argument("bathymetry: profile has wrong length");
  if (beta < 0.0) throw std::invalid_argument("bathymetry: beta must be nonnegative");
  Bathymetry bath;
  bath.db = engine.derivative(bottom, 1);
  bath.d2b = engine.derivative(bottom, 2);
  bath.b = std::move(bottom);
  bath.beta = beta;
  return bath;
}

Bathymetry flat_bathymetry(const Grid& grid) {
  Bathymetry bath;
  bath.b.assign(grid.n_points, 0.0);
  bath.db.assign(grid.n_points, 0.0);
  bath.d2b.assign(grid.n_points, 0.0);
  bath.beta = 0.0;
  return bath;
}

namespace {

// Signed distance to the nearest periodic image of center.
double wrapped_offset(double x, double center, double length) {
  double d = std::fmod(x - center, length);
  if (d < -length / 2) d += length;
  if (d >= length / 2) d -= length;
  return d;
}

} // namespace

RealField gaussian_profile(const Grid& grid, double amplitude, double center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_profile: width must be positive");
  RealField f(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double d = wrapped_offset(grid.dx * i, center, grid.length);
    f[i] = amplitude * std::exp(-d * d / (2.0 * width * width));
  }
  return f;
}

RealField bar_profile(const Grid& grid, double amplitude, double center, double width, double ramp) {
  if (!(width > 0.0)) throw std::invalid_argument("bar_profile: width must be positive");
  if (!(ramp > 0.0)) throw std::invalid_argument("bar_profile: ramp must be positive");
  RealField f(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double d = wrapped_offset(grid.dx * i, center, grid.length);
    f[i] = 0.5 * amplitude *
           (std::tanh((d + width / 2) / ramp) - std::tanh((d - width / 2) / ramp));
  }
  return f;
}

} // namespace wgn
