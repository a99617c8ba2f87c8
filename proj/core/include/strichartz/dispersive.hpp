#pragma once

#include <vector>

#include "strichartz/evolver.hpp"
#include "strichartz/exponents.hpp"

namespace strichartz {

struct DispersiveOptions {
  double window_start = 1.0;
  double window_end = 8.0;
  int samples = 12;  ///< log-spaced times in the window
  double boundary_band = 0.1;
  double boundary_tolerance = 1e-8;
  double slope_tolerance = 0.10;  ///< relative to n_D / 2
};

struct DispersiveReport {
  std::vector<double> times;
  std::vector<double> ratios;  ///< ||U0(t,s) u||_{L^{inf,2}_D} / ||u||_{L^{1,2}_D}
  double slope = 0.0;
  double expected = 0.0;  ///< -n_D / 2
  double relative_error = 0.0;
  double max_boundary_mass = 0.0;
  bool pass = false;
};

/// Least-squares slope of log ratio against log (t - s) over the window.
/// Throws WindowTooLong when the evolved state puts more than the tolerated
/// mass in the boundary band of the periodic box.
DispersiveReport dispersive_decay_fit(const Propagator& free, const ClusterSpec& cluster,
                                      const StateVector& u, double s,
                                      const DispersiveOptions& options = {});

}  // namespace strichartz
