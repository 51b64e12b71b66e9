#pragma once

#include <stdexcept>

namespace wgn {

// Depth dipped below the configured floor h0 somewhere on the grid.
struct CavitationError : std::runtime_error {
  CavitationError(const std::string& what, double min_h_)
      : std::runtime_error(what), min_h(min_h_) {}
  double min_h;
};

} // namespace wgn
