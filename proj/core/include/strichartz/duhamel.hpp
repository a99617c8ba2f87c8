#pragma once

#include <memory>
#include <string>
#include <vector>

#include "strichartz/evolver.hpp"
#include "strichartz/norms.hpp"
#include "strichartz/timegrid.hpp"

namespace strichartz {

/// (G_s u)(t_k) = -i int_s^{t_k} U0(t_k, r) u(r) dr on the nodes of `grid`.
/// The integral is accumulated recursively with neighbor propagators only, so
/// the cost is O(K) propagator applications.
std::vector<StateVector> apply_Gs(const std::vector<StateVector>& u, const TimeGrid& grid,
                                  const Propagator& free);

/// int_s^{t_k} U(t_k, r) u(r) dr (no -i), shared by the solver and the
/// Strichartz module.
std::vector<StateVector> duhamel_integral(const std::vector<StateVector>& u, const TimeGrid& grid,
                                          const Propagator& free);

struct PicardOptions {
  QuadratureRule rule = QuadratureRule::Simpson;
  /// Quadrature intervals per unit time (rounded up; at least min_intervals).
  double nodes_per_unit = 1024.0;
  int min_intervals = 8;
  double tolerance = 1e-12;  ///< X(I) surrogate residual
  int max_iterations = 80;
  /// Accept a subinterval once residual_3 / residual_2 is below this.
  double contraction_threshold = 0.9;
  double min_interval = 1e-3;
};

/// Diagnostics of one subinterval solve.
struct PicardState {
  double start = 0.0;
  double end = 0.0;
  int intervals = 0;
  std::vector<double> residuals;  ///< ||u_n - u_{n-1}||_X, n = 1, 2, ...
  std::vector<double> ratios;     ///< residual_{n+1} / residual_n
  double rho = 0.0;               ///< probe ratio residual_3 / residual_2
  bool converged = false;
  int bisections = 0;
};

struct PicardResult {
  Trajectory trajectory;            ///< all nodes of all subintervals
  std::vector<PicardState> pieces;  ///< one per accepted subinterval
  StateVector final_state() const { return trajectory.states.back(); }
};

/// Solves u = U0(., s) f - i int_s^t U0(t, r) V(r) u(r) dr on [s, s + length]
/// (length < 0 runs backward). The interval is cut into equal subintervals;
/// each subinterval is bisected until the observed contraction ratio after
/// three iterations is below the threshold, then iterated to tolerance.
/// Throws NoContraction when the minimum subinterval still fails.
class PicardSolver {
 public:
  PicardSolver(std::shared_ptr<const Propagator> free, std::shared_ptr<const Hamiltonian> full,
               PicardOptions options);

  PicardResult solve(const StateVector& f, double s, double length) const;
  /// One subinterval at fixed length, no bisection; `probe_only` stops after
  /// three iterations.
  PicardResult solve_fixed(const StateVector& f, double s, double length,
                           bool probe_only = false) const;

  const PicardOptions& options() const noexcept { return options_; }
  const Propagator& free() const noexcept { return *free_; }
  const std::vector<ClusterExponent>& clusters() const noexcept { return clusters_; }

 private:
  std::shared_ptr<const Propagator> free_;
  std::shared_ptr<const Hamiltonian> full_;
  PicardOptions options_;
  std::vector<ClusterExponent> clusters_;
  bool static_potential_;
  Eigen::VectorXd static_v_;
};

/// U(t, s) assembled from Picard solutions on contraction-sized subintervals.
/// U(t, t) is the identity; t < s evolves backward.
class PropagatorTable final : public Propagator {
 public:
  explicit PropagatorTable(std::shared_ptr<const PicardSolver> solver) : solver_(std::move(solver)) {}

  StateVector apply(const StateVector& u, double t, double s) const override;
  PicardResult solve(const StateVector& u, double t, double s) const {
    return solver_->solve(u, s, t - s);
  }
  const PicardSolver& solver() const { return *solver_; }

 private:
  std::shared_ptr<const PicardSolver> solver_;
};

/// CSV rows: piece, start, end, iteration, residual, rho_estimate.
std::string picard_csv(const PicardResult& result);

}  // namespace strichartz
