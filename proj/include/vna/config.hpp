#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "vna/error.hpp"

namespace vna {

/// Session-wide numerical and sizing knobs. Every check that samples randomly
/// draws from `seed`, so reports are reproducible.
struct SessionConfig {
  double tolerance = 1e-9;
  std::vector<double> time_grid = default_time_grid();
  std::size_t atom_cap = 8;
  std::size_t node_cap = 500;
  std::uint64_t seed = 20141119;

  static std::vector<double> default_time_grid() {
    constexpr double pi = std::numbers::pi;
    return {pi, -pi, pi / 2, -pi / 2, 1.0 / 3, -1.0 / 3, 1e-2, -1e-2};
  }

  void validate() const {
    if (!(tolerance > 0.0 && tolerance < 1e-3))
      throw domain_error("tolerance must lie in (0, 1e-3)");
    if (atom_cap < 1 || node_cap < 1)
      throw domain_error("atom_cap and node_cap must be at least 1");
    for (double t : time_grid)
      if (!std::isfinite(t)) throw domain_error("time grid entries must be finite");
  }
};

}  // namespace vna
