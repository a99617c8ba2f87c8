#include "strichartz/timegrid.hpp"

#include <cmath>

#include "strichartz/error.hpp"

namespace strichartz {

std::string to_string(QuadratureRule rule) {
  return rule == QuadratureRule::Trapezoid ? "trapezoid" : "simpson";
}

QuadratureRule parse_rule(const std::string& name) {
  if (name == "trapezoid") return QuadratureRule::Trapezoid;
  if (name == "simpson") return QuadratureRule::Simpson;
  fail(ErrorKind::Config, "unknown quadrature rule '" + name + "'");
}

TimeGrid::TimeGrid(double start, double end, int intervals, QuadratureRule rule)
    : start_(start), end_(end), k_(intervals), rule_(rule) {
  require(intervals >= 2, ErrorKind::QuadratureUnderflow,
          "time grid needs at least two intervals (K >= 2)");
  require(rule != QuadratureRule::Simpson || intervals % 2 == 0, ErrorKind::InvalidArgument,
          "Simpson's rule needs an even number of intervals");
  require(start != end, ErrorKind::InvalidArgument, "time grid has zero length");
  for (int k = 0; k <= k_; ++k) nodes_.push_back(start_ + (end_ - start_) * k / k_);
  nodes_.back() = end_;
}

std::vector<double> TimeGrid::weights() const {
  const double h = step();
  std::vector<double> w(static_cast<std::size_t>(k_ + 1));
  for (int k = 0; k <= k_; ++k) {
    if (rule_ == QuadratureRule::Trapezoid) {
      w[static_cast<std::size_t>(k)] = (k == 0 || k == k_) ? h / 2 : h;
    } else {
      w[static_cast<std::size_t>(k)] = (k == 0 || k == k_) ? h / 3 : (k % 2 ? 4 * h / 3 : 2 * h / 3);
    }
  }
  return w;
}

std::vector<double> TimeGrid::abs_weights() const {
  auto w = weights();
  for (auto& x : w) x = std::abs(x);
  return w;
}

}  // namespace strichartz
