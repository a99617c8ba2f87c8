#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "strichartz/hamiltonian.hpp"
#include "strichartz/linalg.hpp"

namespace strichartz {

enum class BackendKind { DenseExponential, KrylovExponential, SplitStep };

std::string to_string(BackendKind kind);
BackendKind parse_backend(const std::string& name);

struct BackendConfig {
  BackendKind kind = BackendKind::DenseExponential;
  double dt = 1e-2;
  /// 1: left-point generator, 2: midpoint, 4: two-point Gauss with commutator.
  int magnus_order = 2;
  std::int64_t dense_cap = kDefaultDenseCap;
  LanczosOptions krylov;
  /// Allowed |norm change| per step relative to the norm (after removing the
  /// test-mode defect's exact decay factor).
  double drift_tolerance = 1e-6;
};

/// Numerical U(t, s) for one Hamiltonian. Time-independent dense problems are
/// diagonalized once and propagated exactly; otherwise the interval is cut
/// into equal steps of at most `dt` and each step uses the Magnus generator.
class Evolver {
 public:
  Evolver(std::shared_ptr<const Hamiltonian> hamiltonian, BackendConfig config);

  const Hamiltonian& hamiltonian() const noexcept { return *h_; }
  const BackendConfig& config() const noexcept { return config_; }

  /// One step of length dt from time t (dt = 0 is the identity).
  StateVector step(const StateVector& u, double t, double dt) const;
  /// U(t, s) u; t < s evolves backward.
  StateVector evolve(const StateVector& u, double t, double s) const;
  /// Applies U(t, s) to every column (each column is a state on the grid).
  void evolve_block(Eigen::MatrixXcd& columns, double t, double s) const;

  int step_count(double t, double s) const;

 private:
  void step_block(Eigen::MatrixXcd& columns, double t, double dt) const;
  Eigen::VectorXcd generator_apply(const Eigen::VectorXcd& v, double t, double dt) const;
  const Eigen::MatrixXcd& dense_step(double t, double dt) const;
  void check_drift(const Eigen::MatrixXcd& before, const Eigen::MatrixXcd& after,
                   double dt) const;

  std::shared_ptr<const Hamiltonian> h_;
  BackendConfig config_;
  bool static_;

  mutable std::mutex mutex_;
  mutable std::optional<RealEigen> real_eigen_;
  mutable std::optional<ComplexEigen> complex_eigen_;
  mutable std::map<std::pair<double, double>, Eigen::MatrixXcd> step_cache_;
  mutable std::optional<OperatorSnapshot> static_snapshot_;
};

/// Abstract two-parameter evolution u -> U(t, s) u.
class Propagator {
 public:
  virtual ~Propagator() = default;
  virtual StateVector apply(const StateVector& u, double t, double s) const = 0;
};

class IdentityPropagator final : public Propagator {
 public:
  StateVector apply(const StateVector& u, double, double) const override { return u; }
};

/// Wraps an Evolver for the full Hamiltonian.
class EvolverPropagator final : public Propagator {
 public:
  explicit EvolverPropagator(std::shared_ptr<const Evolver> evolver) : evolver_(std::move(evolver)) {}
  StateVector apply(const StateVector& u, double t, double s) const override {
    return evolver_->evolve(u, t, s);
  }
  const Evolver& evolver() const { return *evolver_; }

 private:
  std::shared_ptr<const Evolver> evolver_;
};

/// U0(t, s) = U_{0,1}(t, s) x ... x U_{0,N}(t, s) for N independent particles
/// in the external field (interactions ignored). Field-free systems use the
/// exact Fourier multiplier; otherwise each particle's evolver acts on its
/// axis group.
class TensorPropagator final : public Propagator {
 public:
  TensorPropagator(const HamiltonianSpec& spec, GridPtr grid, BackendConfig config);

  StateVector apply(const StateVector& u, double t, double s) const override;

  bool field_free() const noexcept { return field_free_; }
  /// Single-particle evolver for particle j (0-based); null when field free.
  const Evolver* particle_evolver(int particle) const;

 private:
  Eigen::VectorXcd free_phase(double tau) const;

  GridPtr grid_;
  bool field_free_;
  double defect_;
  Eigen::VectorXd kinetic_;
  std::vector<std::shared_ptr<const Evolver>> evolvers_;
  mutable std::mutex phase_mutex_;
  mutable std::map<double, Eigen::VectorXcd> phase_cache_;
};

/// Single-particle grid made of particle j's axes.
GridPtr particle_grid(const TensorGrid& grid, int particle);

}  // namespace strichartz
