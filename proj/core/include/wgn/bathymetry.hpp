#pragma once

#include "wgn/field.hpp"
#include "wgn/grid.hpp"

namespace wgn {

class Spectral;

// Bottom profile with spectrally computed first and second derivatives.
// beta duplicates PhysParams::beta so operators can form beta*db locally;
// make_bathymetry is the only constructor path, keeping db = d_x b and
// d2b = d_x^2 b consistent with the stored profile.
struct Bathymetry {
  RealField b;
  RealField db;
  RealField d2b;
  double beta = 0.0;
};

Bathymetry make_bathymetry(Spectral& engine, RealField bottom, double beta);
Bathymetry flat_bathymetry(const Grid& grid);

// Periodic bump exp(-(x-center)^2 / (2 width^2)) scaled by amplitude.
// Keep width well under length/8 so the wrap-around tails stay at
// round-off level; the profile is evaluated on the nearest periodic image.
RealField gaussian_profile(const Grid& grid, double amplitude, double center, double width);

// Raised bar of the given width centered at center, with tanh-smoothed
// edges of scale ramp. Smooth edges keep the spectrum decaying fast enough
// for the derivative fields to be trustworthy.
RealField bar_profile(const Grid& grid, double amplitude, double center, double width, double ramp);

} // namespace wgn
