#pragma once

#include "wgn/field.hpp"

namespace wgn {

// Surface elevation and layer-averaged velocity at time t, sampled on the
// grid. Both fields always have grid.n_points entries.
struct State {
  RealField zeta;
  RealField v;
  double t = 0.0;
};

inline State make_rest_state(int n_points) {
  return State{RealField(n_points, 0.0), RealField(n_points, 0.0), 0.0};
}

} // namespace wgn
