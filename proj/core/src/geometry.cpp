#include "strichartz/geometry.hpp"

#include "strichartz/error.hpp"

namespace strichartz {

ParticleSystem::ParticleSystem(int dimension, std::vector<double> masses,
                               std::vector<double> charges)
    : dimension_(dimension), masses_(std::move(masses)), charges_(std::move(charges)) {
  require(dimension_ >= 1, ErrorKind::InvalidArgument, "spatial dimension must be >= 1");
  require(!masses_.empty(), ErrorKind::InvalidArgument, "need at least one particle");
  require(masses_.size() == charges_.size(), ErrorKind::DimensionMismatch,
          "masses and charges differ in length");
  for (const double m : masses_) {
    require(m > 0.0, ErrorKind::InvalidArgument, "particle masses must be positive");
  }
}

ParticleSystem ParticleSystem::uniform(int particle_count, int dimension) {
  return ParticleSystem(dimension, std::vector<double>(static_cast<std::size_t>(particle_count), 1.0),
                        std::vector<double>(static_cast<std::size_t>(particle_count), 1.0));
}

ClusterSpec ParticleSystem::cluster(std::vector<int> members) const {
  ClusterSpec c(std::move(members), dimension_);
  c.validate_against(particle_count());
  return c;
}

Eigen::VectorXd center_of_mass(const ParticleSystem& system, const ClusterSpec& cluster,
                               const Configuration& x) {
  require(x.size() == system.configuration_dimension(), ErrorKind::DimensionMismatch,
          "configuration length does not match N*d");
  require(cluster.dimension() == system.dimension(), ErrorKind::DimensionMismatch,
          "cluster dimension differs from the system's");
  cluster.validate_against(system.particle_count());
  const int d = system.dimension();
  Eigen::VectorXd com = Eigen::VectorXd::Zero(d);
  double total = 0.0;
  for (const int j : cluster.members()) {
    const double m = system.mass(j - 1);
    com += m * x.segment((j - 1) * d, d);
    total += m;
  }
  return com / total;
}

double mass_inner_product(const ParticleSystem& system, const Configuration& x,
                          const Configuration& y) {
  require(x.size() == system.configuration_dimension() && y.size() == x.size(),
          ErrorKind::DimensionMismatch, "configuration lengths differ");
  const int d = system.dimension();
  double sum = 0.0;
  for (int j = 0; j < system.particle_count(); ++j) {
    sum += system.mass(j) * x.segment(j * d, d).dot(y.segment(j * d, d));
  }
  return sum;
}

JacobiFrame::JacobiFrame(const ParticleSystem& system, ClusterSpec cluster)
    : cluster_(std::move(cluster)), d_(system.dimension()) {
  cluster_.validate_against(system.particle_count());
  require(cluster_.dimension() == d_, ErrorKind::DimensionMismatch,
          "cluster dimension differs from the system's");
  const int k = static_cast<int>(cluster_.size());
  for (const int j : cluster_.members()) masses_.push_back(system.mass(j - 1));

  // Per-component k x k coefficient matrix, then expanded with identity blocks.
  Eigen::MatrixXd per(k, k);
  per.setZero();
  if (k == 1) {
    per(0, 0) = 1.0;
    center_dim_ = 0;
    relative_dim_ = d_;
  } else {
    double total = 0.0;
    for (const double m : masses_) total += m;
    for (int i = 0; i < k; ++i) per(0, i) = masses_[static_cast<std::size_t>(i)] / total;
    double partial = 0.0;
    for (int row = 1; row < k; ++row) {
      partial += masses_[static_cast<std::size_t>(row - 1)];
      for (int i = 0; i < row; ++i) per(row, i) = -masses_[static_cast<std::size_t>(i)] / partial;
      per(row, row) = 1.0;
    }
    center_dim_ = d_;
    relative_dim_ = (k - 1) * d_;
  }

  forward_ = Eigen::MatrixXd::Zero(k * d_, k * d_);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      for (int a = 0; a < d_; ++a) forward_(r * d_ + a, c * d_ + a) = per(r, c);
    }
  }
  inverse_ = forward_.inverse();

  // r_row = x_row - sum_{i<row} w_i x_i = (x_row - x_0) - sum_{i<row} w_i (x_i - x_0)
  // since the weights sum to one. Columns index the differences x_i - x_0, i >= 1.
  if (k == 1) {
    from_differences_ = Eigen::MatrixXd::Identity(d_, d_);
  } else {
    Eigen::MatrixXd diff(k - 1, k - 1);
    diff.setZero();
    for (int row = 1; row < k; ++row) {
      for (int i = 1; i < k; ++i) diff(row - 1, i - 1) = per(row, i);
    }
    from_differences_ = Eigen::MatrixXd::Zero((k - 1) * d_, (k - 1) * d_);
    for (int r = 0; r < k - 1; ++r) {
      for (int c = 0; c < k - 1; ++c) {
        for (int a = 0; a < d_; ++a) from_differences_(r * d_ + a, c * d_ + a) = diff(r, c);
      }
    }
  }
}

Eigen::VectorXd JacobiFrame::restrict(const Configuration& x) const {
  const int k = static_cast<int>(cluster_.size());
  Eigen::VectorXd xd(k * d_);
  for (int i = 0; i < k; ++i) {
    const int j = cluster_.members()[static_cast<std::size_t>(i)] - 1;
    require((j + 1) * d_ <= x.size(), ErrorKind::DimensionMismatch,
            "configuration too short for cluster");
    xd.segment(i * d_, d_) = x.segment(j * d_, d_);
  }
  return xd;
}

JacobiFrame::Split JacobiFrame::split(const Eigen::VectorXd& cluster_coordinates) const {
  require(cluster_coordinates.size() == forward_.cols(), ErrorKind::DimensionMismatch,
          "cluster coordinate length mismatch");
  if (cluster_.size() == 1) return {Eigen::VectorXd(0), cluster_coordinates};
  const Eigen::VectorXd y = forward_ * cluster_coordinates;
  return {y.head(center_dim_), y.tail(relative_dim_)};
}

Eigen::VectorXd JacobiFrame::assemble(const Split& parts) const {
  require(parts.center.size() == center_dim_ && parts.relative.size() == relative_dim_,
          ErrorKind::DimensionMismatch, "split block sizes do not match the frame");
  if (cluster_.size() == 1) return parts.relative;
  Eigen::VectorXd y(center_dim_ + relative_dim_);
  y << parts.center, parts.relative;
  return inverse_ * y;
}

Eigen::VectorXd JacobiFrame::relative_of(const Configuration& x) const {
  return split(restrict(x)).relative;
}

}  // namespace strichartz
