#pragma once

#include <Eigen/Dense>
#include <vector>

#include "strichartz/fields.hpp"
#include "strichartz/geometry.hpp"
#include "strichartz/grid.hpp"

namespace strichartz {

/// Flattened grid size above which dense operators are refused.
inline constexpr std::int64_t kDefaultDenseCap = std::int64_t{1} << 13;

struct HamiltonianSpec {
  ParticleSystem system = ParticleSystem::uniform(1, 1);
  FieldSpec fields{1};
  std::vector<PotentialTerm> potentials;
  /// Test mode only: adds -i * defect to H, a uniform anti-hermitian part.
  double anti_hermitian_defect = 0.0;
};

/// Operator of the form
///   kinetic_scale * sum_a p_a^2 / (2 m_a) + sum_a (c_a p_a + p_a c_a) + s
/// with real multiplication arrays c_a and s on the grid. H(t) and dH0/dt
/// both have this shape.
struct OperatorSnapshot {
  double time = 0.0;
  double kinetic_scale = 1.0;
  std::vector<Eigen::VectorXd> coupling;  ///< empty when A vanishes
  Eigen::VectorXd scalar;
};

struct OperatorMatrix {
  Eigen::MatrixXcd matrix;
  bool hermitian = false;
  /// max |H - H^*| before symmetrization.
  double hermiticity_defect = 0.0;
  bool real = false;
};

/// Discretization of sum_j (1/2m_j)(-i grad_j - e_j A(t,x_j))^2 + e_j phi(t,x_j)
/// + V(t,x) with a spectral kinetic term and symmetrized A.p coupling.
class Hamiltonian {
 public:
  Hamiltonian(HamiltonianSpec spec, GridPtr grid);

  const HamiltonianSpec& spec() const noexcept { return spec_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const TensorGrid& grid() const noexcept { return *grid_; }
  bool has_vector_potential() const noexcept { return spec_.fields.has_vector_potential(); }
  bool time_independent() const;
  double defect() const noexcept { return spec_.anti_hermitian_defect; }

  /// Multiplier sum_a k_a^2 / (2 m_a) in FFT ordering.
  const Eigen::VectorXd& kinetic_symbol() const noexcept { return kinetic_; }

  OperatorSnapshot at(double t, bool include_potentials = true) const;
  /// dH0/dt (no interaction terms).
  OperatorSnapshot free_time_derivative(double t) const;

  /// Hermitian part only; the test-mode defect is handled by the evolvers.
  void apply(const OperatorSnapshot& op, const StateVector& u, StateVector& out) const;
  StateVector apply(const OperatorSnapshot& op, const StateVector& u) const;
  StateVector apply(double t, const StateVector& u) const;

  /// Dense matrix of a snapshot, built column by column from apply().
  OperatorMatrix dense(const OperatorSnapshot& op, std::int64_t cap = kDefaultDenseCap) const;

  /// Interaction V(t, .) on the grid.
  Eigen::VectorXd interaction(double t) const;

 private:
  HamiltonianSpec spec_;
  GridPtr grid_;
  Eigen::VectorXd kinetic_;
  std::vector<Eigen::VectorXd> wavenumbers_;  // per axis, Nyquist zeroed
  std::vector<double> axis_mass_;
  std::vector<double> axis_charge_;
};

/// build_hamiltonian: dense H(t), hermitian to 1e-10.
OperatorMatrix build_hamiltonian(const HamiltonianSpec& spec, GridPtr grid, double t,
                                 std::int64_t cap = kDefaultDenseCap);

/// Applies p_a = -i d/dx_a spectrally (odd-order: Nyquist mode dropped).
void apply_momentum(const TensorGrid& grid, int axis, const Eigen::VectorXcd& in,
                    Eigen::VectorXcd& out);

/// Applies d^order/dx_a^order spectrally.
Eigen::VectorXcd spectral_derivative(const TensorGrid& grid, int axis, int order,
                                     const Eigen::VectorXcd& in);

}  // namespace strichartz

namespace strichartz {

/// Multiplies by prod_j exp(i e_j phase(t, x_j)) (or its inverse). With the
/// fields of gauge_transform_fields(fields, C) this gives
/// U(t, s) = T(t) U~(t, s) T(s)^{-1}.
StateVector apply_gauge(const GaugeTransform& gauge, const ParticleSystem& system, double t,
                        const StateVector& u, bool inverse = false);

}  // namespace strichartz
