#pragma once

#include <Eigen/Dense>
#include <vector>

#include "strichartz/exponents.hpp"

namespace strichartz {

/// N particles with masses m_j > 0 and charges e_j in R^d.
class ParticleSystem {
 public:
  ParticleSystem(int dimension, std::vector<double> masses, std::vector<double> charges);

  /// N particles of unit mass and unit charge.
  static ParticleSystem uniform(int particle_count, int dimension);

  int particle_count() const noexcept { return static_cast<int>(masses_.size()); }
  int dimension() const noexcept { return dimension_; }
  int configuration_dimension() const noexcept { return particle_count() * dimension_; }
  double mass(int particle) const { return masses_.at(static_cast<std::size_t>(particle)); }
  double charge(int particle) const { return charges_.at(static_cast<std::size_t>(particle)); }
  const std::vector<double>& masses() const noexcept { return masses_; }
  const std::vector<double>& charges() const noexcept { return charges_; }

  ClusterSpec cluster(std::vector<int> members) const;

 private:
  int dimension_;
  std::vector<double> masses_;
  std::vector<double> charges_;
};

/// Configuration points are flat vectors of length N*d, particle-major.
using Configuration = Eigen::VectorXd;

Eigen::VectorXd center_of_mass(const ParticleSystem& system, const ClusterSpec& cluster,
                               const Configuration& x);

/// sum_j m_j (x_j, y_j).
double mass_inner_product(const ParticleSystem& system, const Configuration& x,
                          const Configuration& y);

/// Sequential Jacobi coordinates for a cluster: the first block is the
/// cluster's center of mass, the remaining blocks are r_k = x_{k+1} minus the
/// center of mass of the first k members (sorted labels). The map has unit
/// Jacobian and its center and relative blocks are mass-orthogonal. For a
/// singleton the center block is empty and x_{D,r} = x_j.
class JacobiFrame {
 public:
  JacobiFrame(const ParticleSystem& system, ClusterSpec cluster);

  const ClusterSpec& cluster() const noexcept { return cluster_; }
  int center_dimension() const noexcept { return center_dim_; }
  int relative_dimension() const noexcept { return relative_dim_; }

  /// Rows: (x_{D,c}, x_{D,r}); columns: cluster coordinates x_D.
  const Eigen::MatrixXd& forward() const noexcept { return forward_; }
  const Eigen::MatrixXd& inverse() const noexcept { return inverse_; }

  /// Cluster coordinates x_D extracted from a full configuration.
  Eigen::VectorXd restrict(const Configuration& x) const;

  struct Split {
    Eigen::VectorXd center;
    Eigen::VectorXd relative;
  };

  Split split(const Eigen::VectorXd& cluster_coordinates) const;
  Eigen::VectorXd assemble(const Split& parts) const;

  /// x_{D,r} of a full configuration.
  Eigen::VectorXd relative_of(const Configuration& x) const;

  /// Coefficients of x_{D,r} in terms of the differences x_{j_k} - x_{j_1},
  /// k >= 2 (per spatial component). Used by grid binning.
  const Eigen::MatrixXd& relative_from_differences() const noexcept { return from_differences_; }

 private:
  ClusterSpec cluster_;
  int d_;
  int center_dim_;
  int relative_dim_;
  std::vector<double> masses_;
  Eigen::MatrixXd forward_;
  Eigen::MatrixXd inverse_;
  Eigen::MatrixXd from_differences_;
};

}  // namespace strichartz
