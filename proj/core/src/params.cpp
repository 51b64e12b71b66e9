#include "wgn/params.hpp"

#include <cmath>

namespace wgn {

std::vector<std::string> validate_params(const PhysParams& p, double mu_max) {
  std::vector<std::string> issues;
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.mu) || !(p.mu > 0.0) || p.mu > mu_max)
    issues.push_back("mu must lie in (0, " + std::to_string(mu_max) + "]");
  if (!finite(p.epsilon) || p.epsilon < 0.0 || p.epsilon > 1.0)
    issues.push_back("epsilon must lie in [0, 1]");
  if (!finite(p.beta) || p.beta < 0.0 || p.beta > 1.0)
    issues.push_back("beta must lie in [0, 1]");
  if (!finite(p.h0) || !(p.h0 > 0.0) || !(p.h0 < 1.0))
    issues.push_back("h0 must lie in (0, 1)");
  return issues;
}

} // namespace wgn
