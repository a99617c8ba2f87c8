#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strichartz/evolver.hpp"
#include "strichartz/norms.hpp"

namespace strichartz {

enum class StrichartzKind { Homogeneous, Inhomogeneous, RetardedL1 };

std::string to_string(StrichartzKind kind);
StrichartzKind parse_strichartz_kind(const std::string& name);

struct StrichartzOptions {
  StrichartzKind kind = StrichartzKind::Homogeneous;
  ExponentRational lambda{2};
  ExponentRational sigma = ExponentRational::infinity();
  int samples = 16;
  std::uint64_t seed = 1;
  RandomFieldSpec field{};
};

struct StrichartzReport {
  StrichartzKind kind = StrichartzKind::Homogeneous;
  ExponentRational lambda{2};
  ExponentRational sigma{2};
  std::vector<double> ratios;
  double sup = 0.0;
};

/// Empirical sup over random band-limited samples of
///   homogeneous:   ||U(., s) f||_{L^sigma(I, L^{lambda,2}_D)} / ||f||
///   inhomogeneous: ||int_s^t U(t, r) F(r) dr||_{L^sigma L^{lambda,2}_D}
///                  / ||F||_{L^{sigma'} L^{lambda',2}_D}
///   retarded-L1:   same numerator over ||F||_{L^1(I, L^2)}
/// with s the start of `time`. The pair must be admissible for D.
/// Forcing samples are F(r) = cos(r - s + phase) g with random g and phase.
StrichartzReport strichartz_ratio(const Propagator& propagator, const ClusterSpec& cluster,
                                  const TimeGrid& time, const GridPtr& grid,
                                  const StrichartzOptions& options);

/// ||U(., s) f||_{X(I)} / ||f|| for a fixed set of states, with the X(I)
/// surrogate of the given clusters.
std::vector<double> x_norm_ratios(const Propagator& propagator, const TimeGrid& time,
                                  const std::vector<StateVector>& samples,
                                  const std::vector<ClusterExponent>& clusters);

/// Trajectory of U(t_k, s) f along the nodes, stepping node to node.
Trajectory evolve_along(const Propagator& propagator, const TimeGrid& time, const StateVector& f);

}  // namespace strichartz
