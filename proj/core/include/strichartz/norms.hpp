#pragma once

#include <optional>
#include <vector>

#include "strichartz/exponents.hpp"
#include "strichartz/fields.hpp"
#include "strichartz/grid.hpp"
#include "strichartz/timegrid.hpp"

namespace strichartz {

/// L^{p,q}_D: outer L^p over x_{D,r}, inner L^q over the remaining coordinates.
struct MixedNormSpec {
  ClusterSpec cluster;
  ExponentRational p;
  ExponentRational q;
};

/// ||u(x_{D,r}, .)||_{L^q} for every value of x_{D,r} present on the grid.
/// Grid points are binned by the index differences of the cluster members,
/// which parametrize x_{D,r} through a unimodular map, so the bin quadrature
/// weight is the product of the member spacings. Throws FrameMismatch unless
/// all members share extent and point count per spatial component.
struct RelativeProfile {
  std::vector<double> inner;  ///< inner norm per bin (bins with no points omitted)
  double bin_volume = 1.0;    ///< dx_{D,r} per bin
};
RelativeProfile relative_profile(const StateVector& u, const ClusterSpec& cluster,
                                 const ExponentRational& q);

double mixed_norm(const StateVector& u, const MixedNormSpec& spec);

/// Plain L^p on the grid.
double lp_norm(const StateVector& u, const ExponentRational& p);

/// L^theta(I, L^{l,q}_D) with the time grid's quadrature (theta = inf: max).
struct SpaceTimeNormSpec {
  ExponentRational theta;
  MixedNormSpec space;
};

double spacetime_norm(const Trajectory& u, const TimeGrid& grid, const SpaceTimeNormSpec& spec);
/// Same from precomputed per-node spatial norms.
double time_norm(const std::vector<double>& values, const TimeGrid& grid,
                 const ExponentRational& theta);

/// A potential's cluster together with its declared p_D.
struct ClusterExponent {
  ClusterSpec cluster;
  ExponentRational p;
};

std::vector<ClusterExponent> cluster_exponents(const ParticleSystem& system,
                                               const std::vector<PotentialTerm>& potentials);

/// X(I) norm: max_k ||u(t_k)|| + sum_D ||u||_{L^{theta_D}(I, L^{l_D,2}_D)}.
double x_norm(const Trajectory& u, const TimeGrid& grid, const std::vector<ClusterExponent>& terms);

struct WitnessComponent {
  std::optional<ClusterExponent> cluster;  ///< empty: the L^1(I, H) component
  std::vector<StateVector> samples;        ///< one per time node
};

struct DecompositionWitness {
  std::vector<WitnessComponent> components;
};

/// sum_D ||u_D||_{L^{theta_D'}(I, L^{l_D',2}_D)} + ||u_1||_{L^1(I, H)}: an upper
/// bound for the X*(I) norm of sum of the components. If `target` is given the
/// components must sum to it within 1e-10 (DecompositionMismatch otherwise).
double xstar_upper_bound(const DecompositionWitness& witness, const TimeGrid& grid,
                         const std::vector<StateVector>* target = nullptr);

/// Natural witness for V u: V_D 1{|x_{D,r}| < R} u per cluster, the remainder
/// in L^1(I, H). R = inf puts everything in the cluster components.
DecompositionWitness natural_witness(const Trajectory& u, const ParticleSystem& system,
                                     const std::vector<PotentialTerm>& potentials,
                                     double split_radius = std::numeric_limits<double>::infinity());

struct HolderCheck {
  double lhs = 0.0;  ///< ||V_D u||_{L^{theta'}(I, L^{l',2}_D)}
  double rhs = 0.0;  ///< ||V_D||_{L^{a}(I, L^{p})} ||u||_{L^theta(I, L^{l,2}_D)}
  bool holds() const { return lhs <= rhs * (1.0 + 1e-12) + 1e-300; }
};

/// Both sides of the Hoelder estimate for one potential term.
HolderCheck holder_check(const Trajectory& u, const TimeGrid& grid, const ParticleSystem& system,
                         const PotentialTerm& term);

}  // namespace strichartz
