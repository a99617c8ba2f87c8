#include "strichartz/evolver.hpp"

#include <cmath>

#include "strichartz/error.hpp"
#include "strichartz/fft.hpp"

namespace strichartz {

std::string to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::DenseExponential: return "dense-exponential";
    case BackendKind::KrylovExponential: return "krylov-exponential";
    case BackendKind::SplitStep: return "split-step";
  }
  return "unknown";
}

BackendKind parse_backend(const std::string& name) {
  if (name == "dense-exponential" || name == "dense") return BackendKind::DenseExponential;
  if (name == "krylov-exponential" || name == "krylov") return BackendKind::KrylovExponential;
  if (name == "split-step") return BackendKind::SplitStep;
  fail(ErrorKind::Config, "unknown backend '" + name + "'");
}

Evolver::Evolver(std::shared_ptr<const Hamiltonian> hamiltonian, BackendConfig config)
    : h_(std::move(hamiltonian)), config_(config) {
  require(h_ != nullptr, ErrorKind::InvalidArgument, "evolver needs a hamiltonian");
  require(config_.dt > 0.0, ErrorKind::InvalidArgument, "time step must be positive");
  require(config_.magnus_order == 1 || config_.magnus_order == 2 || config_.magnus_order == 4,
          ErrorKind::InvalidArgument, "Magnus order must be 1, 2 or 4");
  if (config_.kind == BackendKind::SplitStep && h_->has_vector_potential()) {
    fail(ErrorKind::UnsupportedBackend,
         "split-step handles A = 0 only; use dense-exponential or krylov-exponential");
  }
  if (config_.kind == BackendKind::DenseExponential) {
    require(h_->grid().size() <= config_.dense_cap, ErrorKind::MemoryGuard,
            "grid too large for the dense-exponential backend");
  }
  static_ = h_->time_independent();
}

int Evolver::step_count(double t, double s) const {
  const double span = std::abs(t - s);
  if (span == 0.0) return 0;
  return std::max(1, static_cast<int>(std::ceil(span / config_.dt - 1e-9)));
}

Eigen::VectorXcd Evolver::generator_apply(const Eigen::VectorXcd& v, double t, double dt) const {
  const auto apply_at = [&](double time) {
    StateVector u(h_->grid_ptr(), v);
    if (static_) {
      std::lock_guard lock(mutex_);
      if (!static_snapshot_) static_snapshot_ = h_->at(0.0);
    }
    return h_->apply(static_ ? *static_snapshot_ : h_->at(time), u).values();
  };
  if (static_ || config_.magnus_order == 2) return dt * apply_at(t + 0.5 * dt);
  if (config_.magnus_order == 1) return dt * apply_at(t);
  const double c = std::sqrt(3.0) / 6.0;
  const double t1 = t + dt * (0.5 - c);
  const double t2 = t + dt * (0.5 + c);
  StateVector u(h_->grid_ptr(), v);
  const OperatorSnapshot h1 = h_->at(t1), h2 = h_->at(t2);
  const StateVector a1 = h_->apply(h1, u), a2 = h_->apply(h2, u);
  const StateVector h2h1 = h_->apply(h2, a1), h1h2 = h_->apply(h1, a2);
  const std::complex<double> k(0.0, -std::sqrt(3.0) * dt * dt / 12.0);
  return 0.5 * dt * (a1.values() + a2.values()) + k * (h2h1.values() - h1h2.values());
}

const Eigen::MatrixXcd& Evolver::dense_step(double t, double dt) const {
  const auto key = std::make_pair(t, dt);
  {
    std::lock_guard lock(mutex_);
    auto it = step_cache_.find(key);
    if (it != step_cache_.end()) return it->second;
  }
  Eigen::MatrixXcd g;
  bool real = !h_->has_vector_potential();
  if (config_.magnus_order == 4) {
    const double c = std::sqrt(3.0) / 6.0;
    const OperatorMatrix h1 = h_->dense(h_->at(t + dt * (0.5 - c)), config_.dense_cap);
    const OperatorMatrix h2 = h_->dense(h_->at(t + dt * (0.5 + c)), config_.dense_cap);
    const std::complex<double> k(0.0, -std::sqrt(3.0) * dt * dt / 12.0);
    g = 0.5 * dt * (h1.matrix + h2.matrix) + k * (h2.matrix * h1.matrix - h1.matrix * h2.matrix);
    g = 0.5 * (g + g.adjoint()).eval();
    real = false;
  } else {
    const double tg = config_.magnus_order == 1 ? t : t + 0.5 * dt;
    g = dt * h_->dense(h_->at(tg), config_.dense_cap).matrix;
  }
  Eigen::MatrixXcd u = real ? unitary_from(eigh(Eigen::MatrixXd(g.real())), 1.0)
                            : unitary_from(eigh(g), 1.0);
  std::lock_guard lock(mutex_);
  // Bounded cache: repeated sweeps over the same step grid reuse unitaries.
  const std::int64_t n = h_->grid().size();
  const std::size_t capacity = n <= 256 ? 4096 : (n <= 1024 ? 256 : 4);
  if (step_cache_.size() >= capacity) step_cache_.clear();
  return step_cache_.emplace(key, std::move(u)).first->second;
}

void Evolver::check_drift(const Eigen::MatrixXcd& before, const Eigen::MatrixXcd& after,
                          double dt) const {
  const double decay = std::exp(-h_->defect() * dt);
  for (Eigen::Index c = 0; c < before.cols(); ++c) {
    const double n0 = before.col(c).norm();
    if (n0 == 0.0) continue;
    const double drift = std::abs(after.col(c).norm() - n0 * decay) / n0;
    if (!(drift <= config_.drift_tolerance)) {
      fail(ErrorKind::Instability, to_string(config_.kind) + ": norm drift " +
                                       std::to_string(drift) + " in one step of length " +
                                       std::to_string(dt));
    }
  }
}

void Evolver::step_block(Eigen::MatrixXcd& x, double t, double dt) const {
  if (dt == 0.0) return;
  const Eigen::MatrixXcd before = x;
  switch (config_.kind) {
    case BackendKind::DenseExponential:
      x = dense_step(t, dt) * x;
      break;
    case BackendKind::KrylovExponential:
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        x.col(c) = lanczos_expm([&](const Eigen::VectorXcd& v) { return generator_apply(v, t, dt); },
                                x.col(c), 1.0, config_.krylov);
      }
      break;
    case BackendKind::SplitStep: {
      Eigen::VectorXd s;
      if (static_) {
        std::lock_guard lock(mutex_);
        if (!static_snapshot_) static_snapshot_ = h_->at(0.0);
        s = static_snapshot_->scalar;
      } else {
        s = h_->at(config_.magnus_order == 1 ? t : t + 0.5 * dt).scalar;
      }
      Eigen::VectorXcd half(s.size()), kin(s.size());
      for (Eigen::Index i = 0; i < s.size(); ++i) {
        half(i) = std::exp(std::complex<double>(0.0, -0.5 * dt * s(i)));
      }
      const double n = static_cast<double>(h_->grid().size());
      for (Eigen::Index i = 0; i < s.size(); ++i) {
        kin(i) = std::exp(std::complex<double>(0.0, -dt * h_->kinetic_symbol()(i))) / n;
      }
      const auto shape = h_->grid().shape();
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        Eigen::VectorXcd v = half.cwiseProduct(x.col(c));
        fft_inplace(v.data(), shape, {}, FftDirection::Forward);
        v = v.cwiseProduct(kin);
        fft_inplace(v.data(), shape, {}, FftDirection::Backward);
        x.col(c) = half.cwiseProduct(v);
      }
      break;
    }
  }
  if (h_->defect() != 0.0) x *= std::exp(-h_->defect() * dt);
  check_drift(before, x, dt);
}

StateVector Evolver::step(const StateVector& u, double t, double dt) const {
  Eigen::MatrixXcd x = u.values();
  step_block(x, t, dt);
  return StateVector(u.grid_ptr(), x.col(0));
}

void Evolver::evolve_block(Eigen::MatrixXcd& x, double t, double s) const {
  if (t == s) return;
  if (static_ && config_.kind == BackendKind::DenseExponential) {
    // Exact: diagonalize once, propagate any span in one shot.
    const double tau = t - s;
    {
      std::lock_guard lock(mutex_);
      if (!real_eigen_ && !complex_eigen_) {
        const OperatorMatrix m = h_->dense(h_->at(0.0), config_.dense_cap);
        if (m.real) {
          real_eigen_ = eigh(Eigen::MatrixXd(m.matrix.real()));
        } else {
          complex_eigen_ = eigh(m.matrix);
        }
      }
    }
    const Eigen::MatrixXcd before = x;
    const Eigen::VectorXd& values = real_eigen_ ? real_eigen_->values : complex_eigen_->values;
    Eigen::VectorXcd phase(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      phase(i) = std::exp(std::complex<double>(0.0, -tau * values(i)));
    }
    if (real_eigen_) {
      const Eigen::MatrixXd& q = real_eigen_->vectors;
      Eigen::MatrixXcd y(x.rows(), x.cols());
      // Real and imaginary parts separately keep the products in real BLAS.
      const Eigen::MatrixXd re = q.transpose() * x.real();
      const Eigen::MatrixXd im = q.transpose() * x.imag();
      y.real() = re;
      y.imag() = im;
      y = phase.asDiagonal() * y;
      const Eigen::MatrixXd yr = q * y.real();
      const Eigen::MatrixXd yi = q * y.imag();
      x.real() = yr;
      x.imag() = yi;
    } else {
      const Eigen::MatrixXcd& q = complex_eigen_->vectors;
      x = q * (phase.asDiagonal() * (q.adjoint() * x));
    }
    if (h_->defect() != 0.0) x *= std::exp(-h_->defect() * tau);
    check_drift(before, x, tau);
    return;
  }
  const int n = step_count(t, s);
  const double h = (t - s) / n;
  for (int k = 0; k < n; ++k) step_block(x, s + k * h, h);
}

StateVector Evolver::evolve(const StateVector& u, double t, double s) const {
  Eigen::MatrixXcd x = u.values();
  evolve_block(x, t, s);
  return StateVector(u.grid_ptr(), x.col(0));
}

GridPtr particle_grid(const TensorGrid& grid, int particle) {
  std::vector<double> extents;
  std::vector<int> points;
  for (const int a : grid.particle_axes(particle)) {
    extents.push_back(grid.axis(a).extent);
    points.push_back(grid.axis(a).points);
  }
  return std::make_shared<const TensorGrid>(1, grid.dimension(), extents, points);
}

TensorPropagator::TensorPropagator(const HamiltonianSpec& spec, GridPtr grid, BackendConfig config)
    : grid_(std::move(grid)),
      field_free_(spec.fields.scalar_terms().empty() && spec.fields.vector_terms().empty()),
      defect_(spec.anti_hermitian_defect) {
  HamiltonianSpec free_spec = spec;
  free_spec.potentials.clear();
  if (field_free_) {
    kinetic_ = Hamiltonian(free_spec, grid_).kinetic_symbol();
    return;
  }
  const auto& sys = spec.system;
  for (int j = 0; j < sys.particle_count(); ++j) {
    // Reuse the evolver of an earlier particle with identical data.
    std::shared_ptr<const Evolver> shared;
    for (int i = 0; i < j; ++i) {
      if (sys.mass(i) == sys.mass(j) && sys.charge(i) == sys.charge(j) &&
          *particle_grid(*grid_, i) == *particle_grid(*grid_, j)) {
        shared = evolvers_[static_cast<std::size_t>(i)];
        break;
      }
    }
    if (!shared) {
      HamiltonianSpec single;
      single.system = ParticleSystem(sys.dimension(), {sys.mass(j)}, {sys.charge(j)});
      single.fields = spec.fields;
      shared = std::make_shared<const Evolver>(
          std::make_shared<const Hamiltonian>(single, particle_grid(*grid_, j)), config);
    }
    evolvers_.push_back(shared);
  }
}

const Evolver* TensorPropagator::particle_evolver(int particle) const {
  if (field_free_) return nullptr;
  return evolvers_.at(static_cast<std::size_t>(particle)).get();
}

Eigen::VectorXcd TensorPropagator::free_phase(double tau) const {
  std::lock_guard lock(phase_mutex_);
  auto it = phase_cache_.find(tau);
  if (it != phase_cache_.end()) return it->second;
  // Steps repeat along time grids; keep a handful of recent ones.
  if (phase_cache_.size() >= 16) phase_cache_.clear();
  const double n = static_cast<double>(grid_->size());
  Eigen::VectorXcd phase(kinetic_.size());
  for (Eigen::Index i = 0; i < phase.size(); ++i) {
    phase(i) = std::polar(1.0 / n, -tau * kinetic_(i));
  }
  return phase_cache_.emplace(tau, std::move(phase)).first->second;
}

StateVector TensorPropagator::apply(const StateVector& u, double t, double s) const {
  require(u.grid() == *grid_, ErrorKind::DimensionMismatch,
          "state grid differs from the propagator grid");
  if (t == s) return u;
  if (field_free_) {
    Eigen::VectorXcd v = u.values();
    const auto shape = grid_->shape();
    fft_inplace(v.data(), shape, {}, FftDirection::Forward);
    const double tau = t - s;
    v.array() *= free_phase(tau).array();
    fft_inplace(v.data(), shape, {}, FftDirection::Backward);
    if (defect_ != 0.0) v *= std::exp(-defect_ * tau);
    return StateVector(u.grid_ptr(), std::move(v));
  }
  Eigen::VectorXcd data = u.values();
  for (int j = 0; j < grid_->particle_count(); ++j) {
    const auto axes = grid_->particle_axes(j);
    std::int64_t nj = 1;
    for (const int a : axes) nj *= grid_->axis(a).points;
    const std::int64_t inner = grid_->stride(axes.back());
    const std::int64_t outer = grid_->size() / (nj * inner);
    Eigen::MatrixXcd block(nj, outer * inner);
    for (std::int64_t o = 0; o < outer; ++o) {
      for (std::int64_t p = 0; p < nj; ++p) {
        for (std::int64_t i = 0; i < inner; ++i) block(p, o * inner + i) = data((o * nj + p) * inner + i);
      }
    }
    evolvers_[static_cast<std::size_t>(j)]->evolve_block(block, t, s);
    for (std::int64_t o = 0; o < outer; ++o) {
      for (std::int64_t p = 0; p < nj; ++p) {
        for (std::int64_t i = 0; i < inner; ++i) data((o * nj + p) * inner + i) = block(p, o * inner + i);
      }
    }
  }
  if (defect_ != 0.0) data *= std::exp(-defect_ * (t - s));
  return StateVector(u.grid_ptr(), std::move(data));
}

}  // namespace strichartz
