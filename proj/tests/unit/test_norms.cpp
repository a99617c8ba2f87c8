#include <cmath>

#include "doctest.h"
#include "strichartz/evolver.hpp"
#include "strichartz/norms.hpp"
#include "strichartz/strichartz.hpp"

using namespace strichartz;

TEST_CASE("L^p norms of the unit Gaussian") {
  // u = pi^{-1/4} e^{-x^2/2}: ||u||_p^p = pi^{-p/4} sqrt(2 pi / p).
  const auto g = TensorGrid::uniform(1, 1, 12.0, 256);
  const auto u = gaussian_state(g);
  for (int p : {1, 2, 4, 6}) {
    const double expected = std::pow(std::pow(M_PI, -p / 4.0) * std::sqrt(2 * M_PI / p), 1.0 / p);
    CHECK(lp_norm(u, p) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(lp_norm(u, ExponentRational::infinity()) == doctest::Approx(std::pow(M_PI, -0.25)));
}

TEST_CASE("mixed norm with p = q = 2 is the L2 norm") {
  const auto g = TensorGrid::uniform(2, 1, 6.0, 32);
  const auto u = random_field_state(g, {}, 8);
  const ParticleSystem sys = ParticleSystem::uniform(2, 1);
  CHECK(mixed_norm(u, {sys.cluster({1, 2}), 2, 2}) == doctest::Approx(u.norm()).epsilon(1e-12));
  CHECK(mixed_norm(u, {sys.cluster({1}), 2, 2}) == doctest::Approx(u.norm()).epsilon(1e-12));
}

TEST_CASE("mixed norm of a product state factorizes") {
  // u(x1, x2) = a(x1) b(x2) with singleton cluster {1}: ||u||_{L^{p,2}} = ||a||_p ||b||_2.
  const auto g = TensorGrid::uniform(2, 1, 8.0, 64);
  const auto g1 = TensorGrid::uniform(1, 1, 8.0, 64);
  GaussianSpec sa, sb;
  sa.width = Eigen::VectorXd::Constant(1, 0.7);
  sb.width = Eigen::VectorXd::Constant(1, 1.3);
  const auto a = gaussian_state(g1, sa), b = gaussian_state(g1, sb);
  StateVector u(g);
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) u.values()[i * 64 + j] = a.values()[i] * b.values()[j];
  const ParticleSystem sys = ParticleSystem::uniform(2, 1);
  for (int p : {1, 4}) {
    CHECK(mixed_norm(u, {sys.cluster({1}), p, 2}) == doctest::Approx(lp_norm(a, p) * b.norm()).epsilon(1e-10));
  }
}

TEST_CASE("time norms") {
  const TimeGrid tg(0.0, 2.0, 16);
  const std::vector<double> c(17, 3.0);
  CHECK(time_norm(c, tg, 2) == doctest::Approx(3.0 * std::sqrt(2.0)));
  CHECK(time_norm(c, tg, ExponentRational::infinity()) == doctest::Approx(3.0));
  std::vector<double> lin;
  for (double t : tg.nodes()) lin.push_back(t);
  CHECK(time_norm(lin, tg, 1) == doctest::Approx(2.0));
}

TEST_CASE("Hoelder inequality holds for a free two-body trajectory") {
  const auto g = TensorGrid::uniform(2, 1, 8.0, 32);
  HamiltonianSpec spec;
  spec.system = ParticleSystem::uniform(2, 1);
  const TensorPropagator u0(spec, g, {});
  const TimeGrid tg(0.0, 1.0, 16);
  const auto traj = evolve_along(u0, tg, random_field_state(g, {}, 3));
  auto term = PotentialTerm::power_law({1, 2}, 1, 1.0, 0.25);
  term.p = 2;
  const auto hc = holder_check(traj, tg, spec.system, term);
  CHECK(hc.holds());
  CHECK(hc.lhs > 0.0);
  const auto clusters = cluster_exponents(spec.system, {term});
  REQUIRE(clusters.size() == 1);
  CHECK(x_norm(traj, tg, clusters) >= 1.0 - 1e-12);  // contains the L^inf(I, L^2) part
}

TEST_CASE("(2, inf) Strichartz ratio is one") {
  const auto g = TensorGrid::uniform(1, 1, 10.0, 64);
  const TensorPropagator u0(HamiltonianSpec{}, g, {});
  StrichartzOptions so;
  so.lambda = 2;
  so.sigma = ExponentRational::infinity();
  so.samples = 4;
  const auto rep = strichartz_ratio(u0, ClusterSpec({1}, 1), TimeGrid(0.0, 1.0, 8), g, so);
  CHECK(rep.sup == doctest::Approx(1.0).epsilon(1e-12));
  so.lambda = 6;
  so.sigma = 2;
  CHECK_THROWS(strichartz_ratio(u0, ClusterSpec({1}, 1), TimeGrid(0.0, 1.0, 8), g, so));
}
