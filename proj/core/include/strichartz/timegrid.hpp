#pragma once

#include <string>
#include <vector>

#include "strichartz/grid.hpp"

namespace strichartz {

enum class QuadratureRule { Trapezoid, Simpson };

std::string to_string(QuadratureRule rule);
QuadratureRule parse_rule(const std::string& name);

/// Uniform nodes t_k = start + k (end - start) / K, k = 0..K. end < start is a
/// backward grid; weights are then negative (they integrate dr from start).
class TimeGrid {
 public:
  TimeGrid(double start, double end, int intervals, QuadratureRule rule = QuadratureRule::Simpson);

  double start() const noexcept { return start_; }
  double end() const noexcept { return end_; }
  int intervals() const noexcept { return k_; }
  double step() const noexcept { return (end_ - start_) / k_; }
  QuadratureRule rule() const noexcept { return rule_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  double node(int k) const { return nodes_.at(static_cast<std::size_t>(k)); }

  /// Signed composite weights over the whole grid.
  std::vector<double> weights() const;
  /// |weights|, for norms.
  std::vector<double> abs_weights() const;

 private:
  double start_, end_;
  int k_;
  QuadratureRule rule_;
  std::vector<double> nodes_;
};

/// States sampled at the nodes of a time grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
};

}  // namespace strichartz
