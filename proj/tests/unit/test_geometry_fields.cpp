#include <cmath>
#include <random>

#include "doctest.h"
#include "strichartz/error.hpp"
#include "strichartz/fields.hpp"
#include "strichartz/geometry.hpp"

using namespace strichartz;

TEST_CASE("Jacobi frame is invertible with unit Jacobian") {
  const ParticleSystem sys(2, {1.0, 2.0, 3.5}, {1.0, 1.0, 1.0});
  const JacobiFrame frame(sys, sys.cluster({1, 2, 3}));
  CHECK(frame.center_dimension() == 2);
  CHECK(frame.relative_dimension() == 4);
  const Eigen::MatrixXd id = frame.inverse() * frame.forward();
  CHECK((id - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-12);
  CHECK(std::abs(frame.forward().determinant()) == doctest::Approx(1.0));
}

TEST_CASE("center of mass and relative coordinates match direct formulas") {
  const ParticleSystem sys(1, {1.0, 3.0}, {1.0, -1.0});
  const JacobiFrame frame(sys, sys.cluster({1, 2}));
  Eigen::VectorXd x(2);
  x << 0.7, -1.3;
  const auto split = frame.split(frame.restrict(x));
  CHECK(split.center(0) == doctest::Approx((1.0 * 0.7 + 3.0 * -1.3) / 4.0));
  CHECK(split.relative(0) == doctest::Approx(-1.3 - 0.7));
  CHECK((frame.assemble(split) - x).norm() < 1e-12);
  CHECK(center_of_mass(sys, sys.cluster({1, 2}), x)(0) == doctest::Approx(split.center(0)));
}

TEST_CASE("mass inner product splits into center and relative parts") {
  // sum m_j |v_j|^2 = M |v_c|^2 + mu |v_r|^2 for two bodies, mu the reduced mass.
  const ParticleSystem sys(1, {2.0, 5.0}, {1.0, 1.0});
  const JacobiFrame frame(sys, sys.cluster({1, 2}));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 5; ++k) {
    Eigen::VectorXd v(2);
    v << g(rng), g(rng);
    const auto s = frame.split(v);
    const double mu = 2.0 * 5.0 / 7.0;
    CHECK(mass_inner_product(sys, v, v) ==
          doctest::Approx(7.0 * s.center.squaredNorm() + mu * s.relative.squaredNorm()));
  }
}

TEST_CASE("singleton cluster keeps the particle coordinate") {
  const auto sys = ParticleSystem::uniform(2, 2);
  const JacobiFrame frame(sys, sys.cluster({2}));
  Eigen::VectorXd x(4);
  x << 1, 2, 3, 4;
  CHECK(frame.center_dimension() == 0);
  CHECK((frame.relative_of(x) - x.segment(2, 2)).norm() == 0.0);
}

TEST_CASE("radial power field and its derivatives") {
  FieldSpec f(2);
  f.add(ScalarTerm::radial_power(0.5, 1.0, 0.25, 2.0, -0.5));
  Eigen::VectorXd x(2);
  x << 0.3, -1.1;
  const double t = 0.4;
  const double bracket2 = 1.0 + x.squaredNorm();
  CHECK(f.phi(t, x) == doctest::Approx(0.5 * (1 + 0.25 * std::sin(2 * t)) * bracket2 - 0.5));
  CHECK(f.phi_dt(t, x) == doctest::Approx(0.5 * 0.25 * 2 * std::cos(2 * t) * bracket2));
  // d/dx_0 of the time-modulated strength times <x>^2
  CHECK(f.phi_derivative(t, x, {0}) == doctest::Approx(0.5 * (1 + 0.25 * std::sin(2 * t)) * 2 * x(0)));
  CHECK(f.phi_derivative(t, x, {0, 0}) == doctest::Approx(0.5 * (1 + 0.25 * std::sin(2 * t)) * 2));
  CHECK_FALSE(f.time_independent());
}

TEST_CASE("radial power derivative against finite differences") {
  Eigen::VectorXd x(3);
  x << 0.2, -0.4, 0.9;
  const double nu = 0.75, h = 1e-5;
  auto val = [&](const Eigen::VectorXd& y) { return std::pow(1.0 + y.squaredNorm(), nu); };
  for (int a = 0; a < 3; ++a) {
    Eigen::VectorXd p = x, m = x;
    p(a) += h;
    m(a) -= h;
    CHECK(radial_power_derivative(x, nu, {a}) == doctest::Approx((val(p) - val(m)) / (2 * h)).epsilon(1e-8));
  }
}

TEST_CASE("gauge transform adds C<x>^2 and -2tCx") {
  FieldSpec f(1);
  f.add(ScalarTerm::radial_power(0.5, 1.0));
  const double C = 1.3, t = 0.7;
  const FieldSpec g = gauge_transform_fields(f, C);
  Eigen::VectorXd x(1);
  x << 0.6;
  CHECK(g.phi(t, x) == doctest::Approx(f.phi(t, x) + C * (1 + 0.36)));
  CHECK(g.A(t, x)(0) == doctest::Approx(-2 * t * C * 0.6));
  CHECK(g.vector_potential_is_gradient());
  // Transforming back with -C restores the original field.
  const FieldSpec back = gauge_transform_fields(g, -C);
  CHECK(back.phi(t, x) == doctest::Approx(f.phi(t, x)));
  CHECK_FALSE(back.has_vector_potential());
  CHECK(GaugeTransform::harmonic(C).phase(t, x) == doctest::Approx(t * C * 1.36));
}

TEST_CASE("regularized power-law potential") {
  auto v = PotentialTerm::power_law({1, 2}, 1, 1.0, 0.25);
  Eigen::VectorXd r(1);
  r << 0.5;
  CHECK(eval_V(v, 0.0, r) == doctest::Approx(1.0 / std::sqrt(0.25 + 0.0625)));
  CHECK(v.sup_bound() == doctest::Approx(4.0));
  auto bare = PotentialTerm::power_law({1, 2}, 1, 1.0, 0.0);
  r << 0.0;
  CHECK_THROWS_AS(eval_V(bare, 0.0, r), Error);
}

TEST_CASE("assumption scan accepts the harmonic field") {
  FieldSpec f(1);
  f.add(ScalarTerm::radial_power(0.5, 1.0, 0.25, 1.0));
  const auto rep = assumption_scan(f);
  CHECK(rep.pass);
}
