#pragma once

#include <Eigen/Dense>
#include <complex>

#include "strichartz/grid.hpp"

namespace strichartz {

/// Closed-form single-particle propagator kernels
///   K(t, s, x, y) = prefactor(t - s) b(t - s) exp(i S(t, s, x, y)),
/// separable across spatial axes.
///   free:              S = m (x - y)^2 / (2 tau)
///   mehler:            S = m w [(x^2 + y^2) cos(w tau) - 2 x y] / (2 sin(w tau))
///   constant-electric: S = m (x - y)^2 / (2 tau) - E tau (x + y) / 2 - E^2 tau^3 / (24 m)
/// for H = p^2/2m, p^2/2m + m w^2 x^2 / 2 and p^2/2m + E x respectively.
struct ExactKernel {
  enum class Kind { Free, Mehler, ConstantElectric } kind = Kind::Free;
  double mass = 1.0;
  double omega = 1.0;
  /// Constant-electric: per-axis field (missing axes are zero).
  Eigen::VectorXd field;

  static ExactKernel free(double mass = 1.0) { return {Kind::Free, mass, 1.0, {}}; }
  static ExactKernel mehler(double mass, double omega) { return {Kind::Mehler, mass, omega, {}}; }
  static ExactKernel constant_electric(double mass, Eigen::VectorXd field) {
    return {Kind::ConstantElectric, mass, 1.0, std::move(field)};
  }

  /// |tau| at which the representation degenerates (infinity if never).
  double caustic_time() const;
  /// Throws Caustic when tau = 0 or |tau| reaches the caustic time.
  void check_time(double tau) const;

  double phase(double tau, int axis, double x, double y) const;
  /// Free-particle part of the prefactor, sqrt(m / (2 pi i tau)), principal branch.
  std::complex<double> free_prefactor(double tau) const;
  /// Amplitude b relative to the free prefactor: 1 for free and electric,
  /// sqrt(w tau / sin(w tau)) for mehler (independent of x, y).
  double amplitude(double tau) const;
};

/// Quadrature application of the kernel along every axis of a single-particle
/// grid (each axis is treated with the same mass).
StateVector exact_kernel_apply(const ExactKernel& kernel, double t, double s, const StateVector& u);

struct PhaseHessianBound {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
  double max() const { return std::max({xx, xy, yy}); }
};

/// Sup over grid pairs of the second differences of S - m (x - y)^2 / (2 tau)
/// along one axis.
PhaseHessianBound phase_deviation_hessian(const ExactKernel& kernel, double tau,
                                          const GridAxis& axis);

}  // namespace strichartz
