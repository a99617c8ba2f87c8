#include <benchmark/benchmark.h>

#include "strichartz/duhamel.hpp"
#include "strichartz/evolver.hpp"
#include "strichartz/norms.hpp"

using namespace strichartz;

namespace {

void BM_FreePropagator(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto g = TensorGrid::uniform(2, 1, 8.0, m);
  HamiltonianSpec spec;
  spec.system = ParticleSystem::uniform(2, 1);
  const TensorPropagator u(spec, g, {});
  auto f = gaussian_state(g);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    f = u.apply(f, t, t - 1e-3);
    benchmark::DoNotOptimize(f.data());
  }
  state.SetItemsProcessed(state.iterations() * g->size());
}
BENCHMARK(BM_FreePropagator)->Arg(64)->Arg(128)->Arg(256);

void BM_KrylovStep(benchmark::State& state) {
  const auto g = TensorGrid::uniform(1, 1, 8.0, static_cast<int>(state.range(0)));
  HamiltonianSpec spec;
  spec.fields.add(ScalarTerm::radial_power(0.5, 1.0, 0.25, 1.0));
  BackendConfig c;
  c.kind = BackendKind::KrylovExponential;
  c.magnus_order = 4;
  const Evolver ev(std::make_shared<const Hamiltonian>(spec, g), c);
  auto f = gaussian_state(g);
  for (auto _ : state) {
    f = ev.step(f, 0.0, 1e-2);
    benchmark::DoNotOptimize(f.data());
  }
}
BENCHMARK(BM_KrylovStep)->Arg(128)->Arg(512);

void BM_MixedNorm(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto g = TensorGrid::uniform(2, 1, 8.0, m);
  const auto u = random_field_state(g, {}, 1);
  const MixedNormSpec spec{ClusterSpec({1, 2}, 1), 6, 2};
  for (auto _ : state) benchmark::DoNotOptimize(mixed_norm(u, spec));
  state.SetItemsProcessed(state.iterations() * g->size());
}
BENCHMARK(BM_MixedNorm)->Arg(64)->Arg(256);

void BM_PicardSolve(benchmark::State& state) {
  const auto g = TensorGrid::uniform(2, 1, 8.0, 32);
  HamiltonianSpec spec;
  spec.system = ParticleSystem::uniform(2, 1);
  auto term = PotentialTerm::power_law({1, 2}, 1, 1.0, 0.25);
  term.p = 2;
  spec.potentials.push_back(term);
  HamiltonianSpec free_spec = spec;
  free_spec.potentials.clear();
  PicardOptions opt;
  opt.nodes_per_unit = static_cast<double>(state.range(0));
  const PicardSolver solver(std::make_shared<const TensorPropagator>(free_spec, g, BackendConfig{}),
                            std::make_shared<const Hamiltonian>(spec, g), opt);
  const auto f = gaussian_state(g);
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(f, 0.0, 0.25).final_state().data());
}
BENCHMARK(BM_PicardSolve)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
