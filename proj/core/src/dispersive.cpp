#include "strichartz/dispersive.hpp"

#include <cmath>

#include "strichartz/error.hpp"
#include "strichartz/norms.hpp"

namespace strichartz {

DispersiveReport dispersive_decay_fit(const Propagator& free, const ClusterSpec& cluster,
                                      const StateVector& u, double s,
                                      const DispersiveOptions& options) {
  require(options.window_start > 0.0 && options.window_end > options.window_start &&
              options.samples >= 2,
          ErrorKind::InvalidArgument, "dispersive window must satisfy 0 < start < end");
  DispersiveReport report;
  report.expected = -relative_dimension(cluster) / 2.0;
  const double l1 = mixed_norm(u, {cluster, ExponentRational(1), ExponentRational(2)});
  const double log_a = std::log(options.window_start);
  const double log_b = std::log(options.window_end);
  for (int i = 0; i < options.samples; ++i) {
    const double tau = std::exp(log_a + (log_b - log_a) * i / (options.samples - 1));
    const StateVector v = free.apply(u, s + tau, s);
    const double edge = boundary_mass(v, options.boundary_band);
    report.max_boundary_mass = std::max(report.max_boundary_mass, edge);
    if (edge > options.boundary_tolerance) {
      fail(ErrorKind::WindowTooLong,
           "boundary band holds mass " + std::to_string(edge) + " at t - s = " +
               std::to_string(tau) + "; shorten the window or enlarge the box");
    }
    report.times.push_back(tau);
    report.ratios.push_back(
        mixed_norm(v, {cluster, ExponentRational::infinity(), ExponentRational(2)}) / l1);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(report.times.size());
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    const double x = std::log(report.times[i]);
    const double y = std::log(report.ratios[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  report.relative_error = std::abs(report.slope - report.expected) / std::abs(report.expected);
  report.pass = report.relative_error <= options.slope_tolerance;
  return report;
}

}  // namespace strichartz
