#pragma once

#include <vector>

namespace wgn {

// Uniform periodic grid on [0, length). Wavenumbers follow the FFT layout
// {0, 1, ..., n/2-1, -n/2, ..., -1} scaled by 2*pi/length; dealias_cutoff
// is the largest integer mode index kept by the 2/3-rule truncation.
struct Grid {
  int n_points = 0;
  double length = 0.0;
  double dx = 0.0;
  std::vector<double> wavenumbers;
  int dealias_cutoff = 0;
};

// Validates n_points (even, >= 8) and length (> 0).
Grid make_grid(int n_points, double length);

std::vector<double> collocation_points(const Grid& grid);

// Array index of integer mode j (j may be negative, |j| <= n/2).
int mode_index(const Grid& grid, int j);

// True when integer mode j survives the 2/3-rule truncation.
bool mode_kept(const Grid& grid, int j);

} // namespace wgn
