#pragma once

#include <string>
#include <vector>

#include "strichartz/evolver.hpp"
#include "strichartz/timegrid.hpp"

namespace strichartz {

enum class IdentityKind { Id1, Id2 };

std::string to_string(IdentityKind kind);

struct IdentityOptions {
  int intervals = 64;
  QuadratureRule rule = QuadratureRule::Simpson;
};

struct IdentityReport {
  IdentityKind kind = IdentityKind::Id1;
  double t = 0.0;
  double s = 0.0;
  int intervals = 0;
  double lhs_norm = 0.0;
  double residual = 0.0;           ///< ||lhs - rhs|| / ||lhs||
  double absolute_residual = 0.0;
};

/// Evaluates both sides of
///   id-1: H0(t) U0(t,s) f = U0(t,s) H0(s) f + int_s^t U0(t,r) dH0/dr U0(r,s) f dr
///   id-2: U0(t,s) H0(s)^{-1} f = H0(t)^{-1} U0(t,s) f
///                                 - int_s^t U0(t,r) (d/dr H0(r)^{-1}) U0(r,s) f dr
/// with d/dr H0^{-1} = -H0^{-1} dH0/dr H0^{-1}. `h0` must be interaction free;
/// H0^{-1} uses a dense Cholesky factorization (LinearSolve on failure).
IdentityReport identity_check(IdentityKind kind, const Hamiltonian& h0, const Propagator& free,
                              const StateVector& f, double t, double s,
                              const IdentityOptions& options = {});

struct IdentityRefinement {
  std::vector<IdentityReport> levels;
  std::vector<double> observed_orders;  ///< log2(r_K / r_2K)
};

IdentityRefinement identity_refinement(IdentityKind kind, const Hamiltonian& h0,
                                       const Propagator& free, const StateVector& f, double t,
                                       double s, const std::vector<int>& intervals,
                                       QuadratureRule rule = QuadratureRule::Simpson);

}  // namespace strichartz
