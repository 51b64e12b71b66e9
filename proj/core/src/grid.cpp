#include "wgn/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wgn {

Grid make_grid(int n_points, double length) {
  if (n_points < 8) throw std::invalid_argument("grid: n_points must be at least 8");
  if (n_points % 2 != 0) throw std::invalid_argument("grid: n_points must be even");
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid: length must be positive and finite");

  Grid g;
  g.n_points = n_points;
  g.length = length;
  g.dx = length / n_points;
  g.dealias_cutoff = n_points / 3;

  const double k0 = 2.0 * std::numbers::pi / length;
  g.wavenumbers.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    const int j = (i < n_points / 2) ? i : i - n_points;
    g.wavenumbers[i] = k0 * j;
  }
  return g;
}

std::vector<double> collocation_points(const Grid& grid) {
  std::vector<double> x(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) x[i] = grid.dx * i;
  return x;
}

int mode_index(const Grid& grid, int j) {
  if (j < -grid.n_points / 2 || j > grid.n_points / 2 - 1)
    throw std::out_of_range("grid: mode index outside spectrum");
  return j >= 0 ? j : j + grid.n_points;
}

bool mode_kept(const Grid& grid, int j) {
  return std::abs(j) <= grid.dealias_cutoff;
}

} // namespace wgn
