#include <cmath>

#include "doctest.h"
#include "strichartz/duhamel.hpp"
#include "strichartz/error.hpp"

using namespace strichartz;

namespace {

HamiltonianSpec gaussian_well(double strength, int points_dim = 1) {
  HamiltonianSpec spec;
  spec.system = ParticleSystem::uniform(1, points_dim);
  spec.fields = FieldSpec(points_dim);
  spec.potentials.push_back(PotentialTerm::gaussian({1}, points_dim, strength, 1.0));
  return spec;
}

}  // namespace

TEST_CASE("Duhamel integral of a free trajectory") {
  // int_s^t U0(t,r) U0(r,s) g dr = (t - s) U0(t,s) g, and with weight r the
  // factor is (t^2 - s^2)/2; Simpson integrates both exactly.
  const auto g = TensorGrid::uniform(1, 1, 10.0, 64);
  const auto free = std::make_shared<const TensorPropagator>(HamiltonianSpec{}, g, BackendConfig{});
  const auto f = random_field_state(g, {}, 2);
  const TimeGrid tg(0.2, 1.0, 8);
  std::vector<StateVector> u, w;
  for (double r : tg.nodes()) {
    u.push_back(free->apply(f, r, 0.2));
    w.push_back(cplx(r) * u.back());
  }
  const auto iu = duhamel_integral(u, tg, *free);
  const auto iw = duhamel_integral(w, tg, *free);
  for (int k = 0; k <= 8; ++k) {
    const double t = tg.node(k);
    const auto base = free->apply(f, t, 0.2);
    CHECK(distance(iu[k], cplx(t - 0.2) * base) < 1e-12);
    CHECK(distance(iw[k], cplx((t * t - 0.04) / 2) * base) < 1e-12);
  }
  const auto gs = apply_Gs(u, tg, *free);
  CHECK(distance(gs[8], cplx(0.0, -0.8) * free->apply(f, 1.0, 0.2)) < 1e-12);
}

TEST_CASE("Picard solution matches direct evolution") {
  const auto g = TensorGrid::uniform(1, 1, 10.0, 64);
  const auto spec = gaussian_well(-1.0);
  HamiltonianSpec free_spec = spec;
  free_spec.potentials.clear();
  auto free = std::make_shared<const TensorPropagator>(free_spec, g, BackendConfig{});
  auto h = std::make_shared<const Hamiltonian>(spec, g);
  PicardOptions opt;
  opt.nodes_per_unit = 256;
  const PicardSolver solver(free, h, opt);
  GaussianSpec gs;
  gs.momentum = Eigen::VectorXd::Constant(1, 1.0);
  const auto f = gaussian_state(g, gs);
  const auto result = solver.solve(f, 0.0, 1.0);
  const auto direct = Evolver(h, {}).evolve(f, 1.0, 0.0);
  CHECK(distance(result.final_state(), direct) < 1e-8);
  for (const auto& piece : result.pieces) {
    CHECK(piece.converged);
    CHECK(piece.rho < 0.9);
    // Residuals decrease geometrically once contracting.
    for (std::size_t i = 2; i < piece.residuals.size(); ++i) CHECK(piece.residuals[i] < piece.residuals[i - 1]);
  }
  // Backward solve returns to the data.
  CHECK(distance(solver.solve(result.final_state(), 1.0, -1.0).final_state(), f) < 1e-8);
  // The table propagator composes.
  const PropagatorTable table(std::make_shared<const PicardSolver>(free, h, opt));
  CHECK(distance(table.apply(table.apply(f, 0.5, 0.0), 1.0, 0.5), direct) < 1e-8);
  CHECK(distance(table.apply(f, 0.3, 0.3), f) == 0.0);
}

TEST_CASE("strong coupling bisects, then gives up") {
  const auto g = TensorGrid::uniform(1, 1, 10.0, 32);
  const auto spec = gaussian_well(-40.0);
  HamiltonianSpec free_spec = spec;
  free_spec.potentials.clear();
  auto free = std::make_shared<const TensorPropagator>(free_spec, g, BackendConfig{});
  auto h = std::make_shared<const Hamiltonian>(spec, g);
  PicardOptions opt;
  opt.nodes_per_unit = 1024;
  opt.min_interval = 0.01;
  const auto f = gaussian_state(g);
  const auto result = PicardSolver(free, h, opt).solve(f, 0.0, 0.5);
  CHECK(result.pieces.size() > 1);
  CHECK(distance(result.final_state(), Evolver(h, {}).evolve(f, 0.5, 0.0)) < 1e-6);

  opt.min_interval = 0.4;
  try {
    (void)PicardSolver(free, h, opt).solve(f, 0.0, 0.5);
    FAIL("expected NoContraction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoContraction);
  }
}

TEST_CASE("convergence CSV lists every iteration") {
  const auto g = TensorGrid::uniform(1, 1, 10.0, 32);
  const auto spec = gaussian_well(-1.0);
  HamiltonianSpec free_spec = spec;
  free_spec.potentials.clear();
  auto free = std::make_shared<const TensorPropagator>(free_spec, g, BackendConfig{});
  PicardOptions opt;
  opt.nodes_per_unit = 64;
  const auto result =
      PicardSolver(free, std::make_shared<const Hamiltonian>(spec, g), opt).solve(gaussian_state(g), 0.0, 0.5);
  const std::string csv = picard_csv(result);
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  std::size_t expected = 1;
  for (const auto& p : result.pieces) expected += p.residuals.size();
  CHECK(rows == expected);
}
