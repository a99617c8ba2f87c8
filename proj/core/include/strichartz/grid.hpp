#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "strichartz/geometry.hpp"

namespace strichartz {

using cplx = std::complex<double>;

struct GridAxis {
  double extent = 1.0;  ///< the axis covers [-extent, extent)
  int points = 8;       ///< power of two, >= 8
  int particle = 0;     ///< 0-based particle owning this axis
  int component = 0;    ///< spatial component within the particle

  double spacing() const noexcept { return 2.0 * extent / points; }
  double coordinate(int i) const noexcept { return -extent + i * spacing(); }
  /// Angular wavenumber of FFT bin i (standard FFT ordering).
  double wavenumber(int i) const noexcept;
};

/// Periodic tensor grid on X = R^{N d}; axis a belongs to particle a / d.
/// Flattening is row-major with axis 0 slowest.
class TensorGrid {
 public:
  /// One (extent, points) pair per axis, N*d axes in particle-major order.
  TensorGrid(int particle_count, int dimension, const std::vector<double>& extents,
             const std::vector<int>& points);
  /// Same extent and point count on every axis.
  static std::shared_ptr<const TensorGrid> uniform(int particle_count, int dimension, double extent,
                                                   int points);

  int particle_count() const noexcept { return particles_; }
  int dimension() const noexcept { return dimension_; }
  int axis_count() const noexcept { return static_cast<int>(axes_.size()); }
  const GridAxis& axis(int a) const { return axes_.at(static_cast<std::size_t>(a)); }
  const std::vector<GridAxis>& axes() const noexcept { return axes_; }
  std::vector<int> shape() const;
  std::int64_t size() const noexcept { return size_; }
  std::int64_t stride(int a) const { return strides_.at(static_cast<std::size_t>(a)); }

  /// Quadrature weight of a single grid cell (product of spacings).
  double cell_volume() const noexcept { return cell_; }
  double cell_volume(const std::vector<int>& axes) const;

  /// Axes 0-based indices for particle j (0-based).
  std::vector<int> particle_axes(int particle) const;

  void unravel(std::int64_t flat, std::vector<int>& index) const;
  /// Full configuration x (length N*d) at a flat index.
  Eigen::VectorXd point(std::int64_t flat) const;

  friend bool operator==(const TensorGrid& a, const TensorGrid& b);

 private:
  int particles_;
  int dimension_;
  std::vector<GridAxis> axes_;
  std::vector<std::int64_t> strides_;
  std::int64_t size_ = 1;
  double cell_ = 1.0;
};

using GridPtr = std::shared_ptr<const TensorGrid>;

/// Complex wavefunction sampled on a tensor grid.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(GridPtr grid);
  StateVector(GridPtr grid, Eigen::VectorXcd values);

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const TensorGrid& grid() const { return *grid_; }
  Eigen::VectorXcd& values() noexcept { return values_; }
  const Eigen::VectorXcd& values() const noexcept { return values_; }
  std::int64_t size() const noexcept { return values_.size(); }
  cplx* data() noexcept { return values_.data(); }
  const cplx* data() const noexcept { return values_.data(); }

  double norm() const;
  double norm_squared() const;
  cplx inner(const StateVector& other) const;  ///< <this, other>, antilinear in this
  StateVector& normalize();

  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(cplx s);

  void require_compatible(const StateVector& o) const;

 private:
  GridPtr grid_;
  Eigen::VectorXcd values_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(cplx s, StateVector a);

/// sum_j |.| weighted L^2 distance.
double distance(const StateVector& a, const StateVector& b);

struct GaussianSpec {
  Eigen::VectorXd center;    ///< length N*d (zero if empty)
  Eigen::VectorXd width;     ///< per axis s: exp(-(x - c)^2 / (2 s^2)) (ones if empty)
  Eigen::VectorXd momentum;  ///< per axis k: exp(i k x) (zero if empty)
};

/// Normalized product Gaussian.
StateVector gaussian_state(GridPtr grid, const GaussianSpec& spec = {});

struct RandomFieldSpec {
  double envelope_width = 1.0;
  double mode_spacing = 0.5;  ///< wavenumber spacing of the random modes
  int max_mode = 4;           ///< modes n with |n_a| <= max_mode per axis
  double decay = 0.25;        ///< coefficient variance ~ exp(-decay |n|^2)
};

/// Band-limited Gaussian random field: Gaussian envelope times random
/// Fourier modes at fixed wavenumbers, normalized. The continuum function
/// depends only on (spec, seed), not on the grid.
StateVector random_field_state(GridPtr grid, const RandomFieldSpec& spec, std::uint64_t seed);

/// Fraction of |u|^2 in the outer band of relative width `band` on any axis.
double boundary_mass(const StateVector& u, double band = 0.1);

}  // namespace strichartz
