#include <cmath>

#include "doctest.h"
#include "strichartz/error.hpp"
#include "strichartz/evolver.hpp"
#include "strichartz/kernels.hpp"
#include "strichartz/operators.hpp"

using namespace strichartz;

namespace {

// Free evolution of (pi s^2)^{-1/4} exp(-x^2/(2 s^2)) under -d^2/(2m), in closed form.
StateVector analytic_free_gaussian(const GridPtr& g, double s, double m, double t) {
  StateVector u(g);
  const cplx z = 1.0 + cplx(0.0, t / (m * s * s));
  for (int i = 0; i < g->axis(0).points; ++i) {
    const double x = g->axis(0).coordinate(i);
    u.values()[i] = std::pow(M_PI * s * s, -0.25) / std::sqrt(z) * std::exp(-x * x / (2.0 * s * s * z));
  }
  return u;
}

HamiltonianSpec harmonic(double strength = 0.5, double modulation = 0.0) {
  HamiltonianSpec spec;
  spec.fields = FieldSpec(1);
  spec.fields.add(ScalarTerm::radial_power(strength, 1.0, modulation, 1.0, -strength));
  return spec;
}

}  // namespace

TEST_CASE("free propagator matches the analytic Gaussian") {
  const auto g = TensorGrid::uniform(1, 1, 20.0, 256);
  HamiltonianSpec spec;
  spec.system = ParticleSystem(1, {2.0}, {1.0});
  const TensorPropagator u(spec, g, {});
  CHECK(u.field_free());
  const auto f = gaussian_state(g);
  for (double t : {0.5, 1.0, 2.0}) {
    CHECK(distance(u.apply(f, t, 0.0), analytic_free_gaussian(g, 1.0, 2.0, t)) < 1e-12);
  }
  // Exact kernel quadrature against the same closed form; at tau = 4 the
  // kernel phase m (x - y) / tau stays below the grid Nyquist wavenumber.
  CHECK(distance(exact_kernel_apply(ExactKernel::free(2.0), 4.0, 0.0, f), analytic_free_gaussian(g, 1.0, 2.0, 4.0)) <
        1e-10);
}

TEST_CASE("dense, Krylov and split-step backends agree on the oscillator") {
  const auto g = TensorGrid::uniform(1, 1, 10.0, 128);
  auto h = std::make_shared<const Hamiltonian>(harmonic(), g);
  GaussianSpec gs;
  gs.center = Eigen::VectorXd::Constant(1, 1.0);
  gs.momentum = Eigen::VectorXd::Constant(1, 0.5);
  const auto f = gaussian_state(g, gs);
  const auto mehler = exact_kernel_apply(ExactKernel::mehler(1.0, 1.0), 1.0, 0.0, f);

  BackendConfig dense;
  CHECK(distance(Evolver(h, dense).evolve(f, 1.0, 0.0), mehler) < 1e-10);
  BackendConfig krylov;
  krylov.kind = BackendKind::KrylovExponential;
  krylov.dt = 0.05;
  CHECK(distance(Evolver(h, krylov).evolve(f, 1.0, 0.0), mehler) < 1e-10);

  // Strang splitting is second order: halving dt quarters the error.
  BackendConfig split;
  split.kind = BackendKind::SplitStep;
  split.dt = 0.02;
  const double e1 = distance(Evolver(h, split).evolve(f, 1.0, 0.0), mehler);
  split.dt = 0.01;
  const double e2 = distance(Evolver(h, split).evolve(f, 1.0, 0.0), mehler);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("Magnus orders on a time-dependent field") {
  const auto g = TensorGrid::uniform(1, 1, 8.0, 64);
  auto h = std::make_shared<const Hamiltonian>(harmonic(0.5, 0.5), g);
  const auto f = gaussian_state(g);
  BackendConfig ref;
  ref.magnus_order = 4;
  ref.dt = 1e-3;
  const auto exact = Evolver(h, ref).evolve(f, 1.0, 0.0);
  for (int order : {2, 4}) {
    BackendConfig c;
    c.magnus_order = order;
    c.dt = 0.1;
    const double e1 = distance(Evolver(h, c).evolve(f, 1.0, 0.0), exact);
    c.dt = 0.05;
    const double e2 = distance(Evolver(h, c).evolve(f, 1.0, 0.0), exact);
    CHECK(std::log2(e1 / e2) == doctest::Approx(order).epsilon(0.1));
  }
}

TEST_CASE("composition and backward evolution") {
  const auto g = TensorGrid::uniform(1, 1, 8.0, 64);
  auto h = std::make_shared<const Hamiltonian>(harmonic(0.5, 0.3), g);
  BackendConfig c;
  c.kind = BackendKind::KrylovExponential;
  c.magnus_order = 4;
  c.dt = 0.05;
  const Evolver u(h, c);
  const auto f = random_field_state(g, {}, 1);
  CHECK(distance(u.evolve(u.evolve(f, 0.4, 0.0), 1.0, 0.4), u.evolve(f, 1.0, 0.0)) < 1e-12);
  CHECK(distance(u.evolve(u.evolve(f, 1.0, 0.0), 0.0, 1.0), f) < 1e-12);
  CHECK(std::abs(u.evolve(f, 1.0, 0.0).norm() - f.norm()) < 1e-12);
}

TEST_CASE("tensor propagator factorizes over particles") {
  HamiltonianSpec spec;
  spec.system = ParticleSystem::uniform(2, 1);
  spec.fields = FieldSpec(1);
  spec.fields.add(ScalarTerm::radial_power(0.5, 1.0));
  const auto g = TensorGrid::uniform(2, 1, 6.0, 32);
  const TensorPropagator tp(spec, g, {});
  // Reference: the full two-particle Hamiltonian without interactions.
  const Evolver full(std::make_shared<const Hamiltonian>(spec, g), {});
  const auto f = random_field_state(g, {}, 4);
  CHECK(distance(tp.apply(f, 0.8, 0.1), full.evolve(f, 0.8, 0.1)) < 1e-10);
}

TEST_CASE("split-step rejects magnetic fields") {
  HamiltonianSpec spec;
  spec.fields = FieldSpec(1);
  spec.fields.add(VectorTerm::radial_gradient(1.0, 1.0));
  const auto g = TensorGrid::uniform(1, 1, 4.0, 16);
  BackendConfig c;
  c.kind = BackendKind::SplitStep;
  CHECK_THROWS_AS(Evolver(std::make_shared<const Hamiltonian>(spec, g), c), Error);
}

TEST_CASE("dense cap guards memory") {
  const auto g = TensorGrid::uniform(2, 1, 4.0, 128);
  auto spec = harmonic();
  spec.system = ParticleSystem::uniform(2, 1);
  const Hamiltonian h(spec, g);
  CHECK_THROWS_AS(h.dense(h.at(0.0), 1000), Error);
}

TEST_CASE("oscillator ground energy and inverse") {
  CHECK(hos_ground_energy(TensorGrid::uniform(1, 1, 8.0, 64)) == doctest::Approx(0.5).epsilon(1e-9));
  const auto rep = hos_inverse_properties(TensorGrid::uniform(1, 1, 8.0, 64));
  CHECK(rep.inverse_norm == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.kernel_min > 0.0);
}

TEST_CASE("Sigma(k) norm of a Gaussian") {
  // u = pi^{-1/4} e^{-x^2/2}: ||u|| = 1, ||x u||^2 = 1/2, ||u'||^2 = 1/2.
  const auto g = TensorGrid::uniform(1, 1, 10.0, 128);
  const auto u = gaussian_state(g);
  CHECK(sigma_k_norm(u, 0) == doctest::Approx(1.0));
  CHECK(sigma_k_norm(u, 1) * sigma_k_norm(u, 1) == doctest::Approx(2.0));
}
