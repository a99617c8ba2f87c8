#include "strichartz/grid.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "strichartz/error.hpp"

namespace strichartz {

double GridAxis::wavenumber(int i) const noexcept {
  const int shifted = i < points / 2 ? i : i - points;
  return std::numbers::pi * shifted / extent;
}

TensorGrid::TensorGrid(int particle_count, int dimension, const std::vector<double>& extents,
                       const std::vector<int>& points)
    : particles_(particle_count), dimension_(dimension) {
  require(particle_count >= 1 && dimension >= 1, ErrorKind::InvalidArgument,
          "grid needs at least one particle and one dimension");
  const std::size_t n_axes = static_cast<std::size_t>(particle_count * dimension);
  require(extents.size() == n_axes && points.size() == n_axes, ErrorKind::DimensionMismatch,
          "grid needs one extent and one point count per axis");
  for (std::size_t a = 0; a < n_axes; ++a) {
    const int m = points[a];
    require(m >= 8 && (m & (m - 1)) == 0, ErrorKind::InvalidArgument,
            "points per axis must be a power of two >= 8");
    require(extents[a] > 0.0, ErrorKind::InvalidArgument, "axis extent must be positive");
    axes_.push_back({extents[a], m, static_cast<int>(a) / dimension,
                     static_cast<int>(a) % dimension});
  }
  strides_.assign(n_axes, 1);
  for (int a = static_cast<int>(n_axes) - 1; a >= 0; --a) {
    strides_[static_cast<std::size_t>(a)] = size_;
    size_ *= axes_[static_cast<std::size_t>(a)].points;
    cell_ *= axes_[static_cast<std::size_t>(a)].spacing();
  }
}

GridPtr TensorGrid::uniform(int particle_count, int dimension, double extent, int points) {
  const std::size_t n = static_cast<std::size_t>(particle_count * dimension);
  return std::make_shared<const TensorGrid>(particle_count, dimension,
                                            std::vector<double>(n, extent),
                                            std::vector<int>(n, points));
}

std::vector<int> TensorGrid::shape() const {
  std::vector<int> s;
  for (const auto& a : axes_) s.push_back(a.points);
  return s;
}

double TensorGrid::cell_volume(const std::vector<int>& axes) const {
  double v = 1.0;
  for (const int a : axes) v *= axis(a).spacing();
  return v;
}

std::vector<int> TensorGrid::particle_axes(int particle) const {
  require(particle >= 0 && particle < particles_, ErrorKind::OutOfRange,
          "particle index out of range");
  std::vector<int> out;
  for (int c = 0; c < dimension_; ++c) out.push_back(particle * dimension_ + c);
  return out;
}

void TensorGrid::unravel(std::int64_t flat, std::vector<int>& index) const {
  index.resize(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    index[a] = static_cast<int>((flat / strides_[a]) % axes_[a].points);
  }
}

Eigen::VectorXd TensorGrid::point(std::int64_t flat) const {
  Eigen::VectorXd x(axis_count());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const int i = static_cast<int>((flat / strides_[a]) % axes_[a].points);
    x(static_cast<Eigen::Index>(a)) = axes_[a].coordinate(i);
  }
  return x;
}

bool operator==(const TensorGrid& a, const TensorGrid& b) {
  if (a.particles_ != b.particles_ || a.dimension_ != b.dimension_) return false;
  for (std::size_t i = 0; i < a.axes_.size(); ++i) {
    if (a.axes_[i].extent != b.axes_[i].extent || a.axes_[i].points != b.axes_[i].points) {
      return false;
    }
  }
  return true;
}

StateVector::StateVector(GridPtr grid) : grid_(std::move(grid)) {
  require(grid_ != nullptr, ErrorKind::InvalidArgument, "state needs a grid");
  values_ = Eigen::VectorXcd::Zero(grid_->size());
}

StateVector::StateVector(GridPtr grid, Eigen::VectorXcd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(grid_ != nullptr, ErrorKind::InvalidArgument, "state needs a grid");
  require(values_.size() == grid_->size(), ErrorKind::DimensionMismatch,
          "state values do not match the grid size");
}

double StateVector::norm_squared() const { return values_.squaredNorm() * grid_->cell_volume(); }
double StateVector::norm() const { return std::sqrt(norm_squared()); }

cplx StateVector::inner(const StateVector& other) const {
  require_compatible(other);
  return values_.dot(other.values_) * grid_->cell_volume();
}

StateVector& StateVector::normalize() {
  const double n = norm();
  require(n > 0.0, ErrorKind::InvalidArgument, "cannot normalize the zero state");
  values_ /= n;
  return *this;
}

void StateVector::require_compatible(const StateVector& o) const {
  require(grid_ && o.grid_ && (grid_ == o.grid_ || *grid_ == *o.grid_),
          ErrorKind::DimensionMismatch, "states live on different grids");
}

StateVector& StateVector::operator+=(const StateVector& o) {
  require_compatible(o);
  values_ += o.values_;
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  require_compatible(o);
  values_ -= o.values_;
  return *this;
}

StateVector& StateVector::operator*=(cplx s) {
  values_ *= s;
  return *this;
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
StateVector operator*(cplx s, StateVector a) { return a *= s; }

double distance(const StateVector& a, const StateVector& b) {
  a.require_compatible(b);
  return std::sqrt((a.values() - b.values()).squaredNorm() * a.grid().cell_volume());
}

StateVector gaussian_state(GridPtr grid, const GaussianSpec& spec) {
  const int n = grid->axis_count();
  const Eigen::VectorXd c = spec.center.size() ? spec.center : Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd w = spec.width.size() ? spec.width : Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd k = spec.momentum.size() ? spec.momentum : Eigen::VectorXd::Zero(n);
  require(c.size() == n && w.size() == n && k.size() == n, ErrorKind::DimensionMismatch,
          "gaussian parameters need one entry per axis");
  // Per-axis factors, each normalized in the continuum.
  std::vector<Eigen::VectorXcd> factors;
  for (int a = 0; a < n; ++a) {
    const auto& ax = grid->axis(a);
    Eigen::VectorXcd f(ax.points);
    const double norm = std::pow(std::numbers::pi * w(a) * w(a), -0.25);
    for (int i = 0; i < ax.points; ++i) {
      const double x = ax.coordinate(i);
      f(i) = norm * std::exp(-(x - c(a)) * (x - c(a)) / (2.0 * w(a) * w(a))) *
             std::exp(cplx(0.0, k(a) * x));
    }
    factors.push_back(std::move(f));
  }
  StateVector u(grid);
  std::vector<int> idx;
  for (std::int64_t flat = 0; flat < grid->size(); ++flat) {
    grid->unravel(flat, idx);
    cplx v = 1.0;
    for (int a = 0; a < n; ++a) v *= factors[static_cast<std::size_t>(a)](idx[static_cast<std::size_t>(a)]);
    u.values()(flat) = v;
  }
  return u;
}

StateVector random_field_state(GridPtr grid, const RandomFieldSpec& spec, std::uint64_t seed) {
  const int n = grid->axis_count();
  const int per = 2 * spec.max_mode + 1;
  long modes = 1;
  for (int a = 0; a < n; ++a) modes *= per;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> coeff(static_cast<std::size_t>(modes));
  std::vector<std::vector<int>> mode_index(static_cast<std::size_t>(modes), std::vector<int>(n));
  for (long m = 0; m < modes; ++m) {
    long rem = m;
    double n2 = 0.0;
    for (int a = n - 1; a >= 0; --a) {
      const int na = static_cast<int>(rem % per) - spec.max_mode;
      rem /= per;
      mode_index[static_cast<std::size_t>(m)][static_cast<std::size_t>(a)] = na;
      n2 += na * na;
    }
    const double re = normal(rng);
    const double im = normal(rng);
    coeff[static_cast<std::size_t>(m)] = std::exp(-0.5 * spec.decay * n2) * cplx(re, im);
  }
  // Per-axis tables of exp(i n dk x_a(i)).
  std::vector<std::vector<Eigen::VectorXcd>> table(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    const auto& ax = grid->axis(a);
    for (int m = -spec.max_mode; m <= spec.max_mode; ++m) {
      Eigen::VectorXcd row(ax.points);
      for (int i = 0; i < ax.points; ++i) {
        row(i) = std::exp(cplx(0.0, m * spec.mode_spacing * ax.coordinate(i)));
      }
      table[static_cast<std::size_t>(a)].push_back(std::move(row));
    }
  }
  StateVector u(grid);
  std::vector<int> idx;
  const double w2 = spec.envelope_width * spec.envelope_width;
  for (std::int64_t flat = 0; flat < grid->size(); ++flat) {
    grid->unravel(flat, idx);
    const Eigen::VectorXd x = grid->point(flat);
    cplx sum = 0.0;
    for (long m = 0; m < modes; ++m) {
      cplx term = coeff[static_cast<std::size_t>(m)];
      for (int a = 0; a < n; ++a) {
        const int na = mode_index[static_cast<std::size_t>(m)][static_cast<std::size_t>(a)];
        term *= table[static_cast<std::size_t>(a)][static_cast<std::size_t>(na + spec.max_mode)](
            idx[static_cast<std::size_t>(a)]);
      }
      sum += term;
    }
    u.values()(flat) = std::exp(-x.squaredNorm() / (2.0 * w2)) * sum;
  }
  return u.normalize();
}

double boundary_mass(const StateVector& u, double band) {
  const TensorGrid& g = u.grid();
  std::vector<int> idx;
  double outer = 0.0;
  for (std::int64_t flat = 0; flat < g.size(); ++flat) {
    g.unravel(flat, idx);
    bool edge = false;
    for (int a = 0; a < g.axis_count() && !edge; ++a) {
      const auto& ax = g.axis(a);
      edge = std::abs(ax.coordinate(idx[static_cast<std::size_t>(a)])) > (1.0 - band) * ax.extent;
    }
    if (edge) outer += std::norm(u.values()(flat));
  }
  const double total = u.values().squaredNorm();
  return total > 0.0 ? outer / total : 0.0;
}

}  // namespace strichartz
