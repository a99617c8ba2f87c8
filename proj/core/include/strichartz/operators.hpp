#pragma once

#include <vector>

#include "strichartz/hamiltonian.hpp"

namespace strichartz {

/// (sum_{|a+b|<=k} ||x^a d^b u||^2)^{1/2}, spectral derivatives, k in {0,1,2}.
double sigma_k_norm(const StateVector& u, int k);

/// -1/2 Laplacian + 1/2 |x|^2 over all axes, unit masses.
HamiltonianSpec oscillator_spec(const TensorGrid& grid);

/// Lowest eigenvalue of the discrete oscillator (restarted Lanczos).
double hos_ground_energy(const GridPtr& grid);

struct LowerBoundReport {
  bool hypothesis_met = false;
  double hypothesis_margin = 0.0;  ///< min over samples of phi - <x>^2/2
  double lambda_min = 0.0;
  double lambda_coarse = 0.0;      ///< same on the grid with half the points
  double bound = 0.0;              ///< (Nd + 1) / 2
  double tol_disc = 0.0;
  bool pass = false;
};

/// Smallest eigenvalue of H0(t) (interaction terms dropped) against
/// (Nd + 1)/2, provided phi(t, .) >= <x>^2/2 on the grid samples. Masses and
/// charges must be one. tol_disc = |lambda(M) - lambda(M/2)|.
LowerBoundReport h0_lower_bound_check(const HamiltonianSpec& spec, const GridPtr& grid, double t);

struct WeightedNorm {
  int alpha = 0, beta = 0, gamma = 0, delta = 0;
  double norm = 0.0;  ///< ||x^alpha d^beta H^{-1} x^gamma d^delta||
};

struct HosInverseReport {
  std::vector<WeightedNorm> norms;
  double inverse_norm = 0.0;
  double dx_inverse_norm = 0.0;  ///< ||d x H^{-1}|| on inputs supported in the interior
  double kernel_min = 0.0;       ///< min G(x, y) over the interior subgrid
  double interior_radius = 0.0;
  double decay_rate = 0.0;       ///< kappa in G ~ exp(-kappa |x-y|(1+|x|+|y|))
  double decay_fit_residual = 0.0;

  double norm_of(int alpha, int beta, int gamma, int delta) const;
};

/// Dense H_os^{-1} on a 1-d grid. The interior subgrid is |x|, |y| <= fraction * L.
HosInverseReport hos_inverse_properties(const GridPtr& grid, double interior_fraction = 1.0 / 3.0);

}  // namespace strichartz
