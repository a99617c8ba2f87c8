// Acceptance run: one line per criterion, tolerances fixed below.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "strichartz/dispersive.hpp"
#include "strichartz/duhamel.hpp"
#include "strichartz/error.hpp"
#include "strichartz/exponents.hpp"
#include "strichartz/identities.hpp"
#include "strichartz/kernels.hpp"
#include "strichartz/operators.hpp"
#include "strichartz/scenario.hpp"
#include "strichartz/strichartz.hpp"

using namespace strichartz;

namespace {

const std::string kScenarios = STRICHARTZ_SCENARIO_DIR;
const std::string kCli = STRICHARTZ_LAB_CLI;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void need(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [miss]");
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double rel(const StateVector& a, const StateVector& b) { return distance(a, b) / b.norm(); }

Scenario scenario(const std::string& name) { return load_scenario(kScenarios + "/" + name + ".json"); }

// 1. exact exponent identities
void exponent_calculus(Outcome& o) {
  const ExponentRational inf = ExponentRational::infinity();
  const auto p33 = strichartz_pair(3, 3);
  o.need(a_of_p(3, 3) == 2 && p33.l == 3 && p33.theta == 4, "(3,3): a=2, (l,theta)=(3,4)");
  o.need(a_of_p(3, inf) == 1, "a(inf)=1");
  o.need(is_admissible(3, 6, 2), "(3,6,2) admissible");
  const auto d = derivative_exponents(3, ExponentRational(3, 2));
  o.need(d.b == 2 && d.q == ExponentRational(6, 5), "(3,3/2): (b,q)=(2,6/5)");
  int bad = 0, total = 0;
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= 96; ++k) {
      const ExponentRational p(k, 8);
      if (p < max(ExponentRational(1), ExponentRational(n, 2))) continue;
      const auto pr = strichartz_pair(n, p);
      ++total;
      bad += !is_admissible(n, pr.l, pr.theta);
    }
  }
  o.need(bad == 0, std::to_string(total) + " generated pairs admissible");
}

// 2. gamma threshold for n = 3 under V-2
void gamma_threshold(Outcome& o) {
  const auto scan = scan_gamma_threshold(3, Assumption::V2, 100, ExponentRational(3));
  o.need(scan.boundary >= 1.49 && scan.boundary <= 1.51, "boundary " + num(scan.boundary) + " in [1.49,1.51]");
}

// 3. free Gaussian against closed-form variance and the exact kernel
void free_oracle(Outcome& o) {
  const auto g = TensorGrid::uniform(1, 1, 20.0, 256);
  const TensorPropagator u(HamiltonianSpec{}, g, {});
  const auto f = gaussian_state(g);
  double worst = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double t = 0.1 * k;
    const auto v = u.apply(f, t, 0.0);
    double m1 = 0, m2 = 0;
    for (int i = 0; i < 256; ++i) {
      const double x = g->axis(0).coordinate(i), w = std::norm(v.values()[i]) * g->cell_volume();
      m1 += x * w;
      m2 += x * x * w;
    }
    worst = std::max(worst, std::abs((m2 - m1 * m1) - (1 + t * t) / 2) / ((1 + t * t) / 2));
  }
  o.need(worst < 1e-6, "variance rel err " + num(worst));
  const double k = distance(exact_kernel_apply(ExactKernel::free(1.0), 2.0, 0.0, f), u.apply(f, 2.0, 0.0));
  o.need(k < 1e-6, "kernel vs spectral " + num(k));
}

// 4. u(2 pi) = -u(0) for the 1-d oscillator
void harmonic_recurrence(Outcome& o) {
  const auto g = TensorGrid::uniform(1, 1, 10.0, 256);
  auto h = std::make_shared<const Hamiltonian>(oscillator_spec(*g), g);
  GaussianSpec gs;
  gs.center = Eigen::VectorXd::Constant(1, 1.0);
  gs.width = Eigen::VectorXd::Constant(1, 0.8);
  gs.momentum = Eigen::VectorXd::Constant(1, 0.5);
  const auto f = gaussian_state(g, gs);
  const StateVector minus = cplx(-1.0) * f;
  BackendConfig dense;
  const double e1 = rel(Evolver(h, dense).evolve(f, 2 * M_PI, 0.0), minus);
  BackendConfig split;
  split.kind = BackendKind::SplitStep;
  split.dt = 1e-3;
  const double e2 = rel(Evolver(h, split).evolve(f, 2 * M_PI, 0.0), minus);
  o.need(e1 < 1e-6, "dense " + num(e1));
  o.need(e2 < 1e-4, "split-step " + num(e2));
}

// 5. spectral lower bounds
void operator_bounds(Outcome& o) {
  const double e1 = hos_ground_energy(TensorGrid::uniform(1, 1, 8.0, 128));
  const double e2 = hos_ground_energy(TensorGrid::uniform(1, 2, 8.0, 64));
  o.need(std::abs(e1 - 0.5) < 1e-3, "E0(n=1) " + num(e1));
  o.need(std::abs(e2 - 1.0) < 1e-3, "E0(n=2) " + num(e2));
  HamiltonianSpec spec;
  spec.system = ParticleSystem::uniform(2, 1);
  spec.fields = FieldSpec(1);
  spec.fields.add(ScalarTerm::radial_power(0.5, 1.0));
  const auto lb = h0_lower_bound_check(spec, TensorGrid::uniform(2, 1, 8.0, 64), 0.0);
  o.need(lb.hypothesis_met && lb.lambda_min + lb.tol_disc >= 1.5, "lambda_min " + num(lb.lambda_min) + " >= 3/2");
  const auto inv = hos_inverse_properties(TensorGrid::uniform(1, 1, 8.0, 128));
  o.need(inv.kernel_min > 0.0, "kernel min " + num(inv.kernel_min));
}

// 6. dispersive slope -n_D/2
void dispersive(Outcome& o) {
  struct Case {
    int n;
    double extent, width, window_end;
    int points, samples;
  };
  for (const Case c : {Case{1, 128.0, 0.5, 8.0, 2048, 12}, Case{2, 40.0, 0.5, 4.0, 512, 10}}) {
    const auto g = TensorGrid::uniform(c.n, 1, c.extent, c.points);
    HamiltonianSpec spec;
    spec.system = ParticleSystem::uniform(c.n, 1);
    const TensorPropagator u(spec, g, {});
    GaussianSpec gs;
    gs.width = Eigen::VectorXd::Constant(c.n, c.width);
    DispersiveOptions opt;
    opt.window_start = 1.0;
    opt.window_end = c.window_end;
    opt.samples = c.samples;
    const ClusterSpec cl = c.n == 1 ? ClusterSpec({1}, 1) : ClusterSpec({1, 2}, 1);
    const auto rep = dispersive_decay_fit(u, cl, gaussian_state(g, gs), 0.0, opt);
    const double expected = -0.5;  // n_D = 1 in both cases
    const double err = std::abs(rep.slope - expected) / std::abs(expected);
    o.need(err <= 0.10, "N=" + std::to_string(c.n) + " slope " + num(rep.slope));
  }
}

// 7. Strichartz ratios
void strichartz_bounds(Outcome& o) {
  const ClusterSpec cl({1}, 1);
  const TimeGrid time(0.0, 1.0, 64);
  auto sup = [&](int points, int samples, StrichartzKind kind, ExponentRational l, ExponentRational s) {
    const auto g = TensorGrid::uniform(1, 1, 20.0, points);
    const TensorPropagator u(HamiltonianSpec{}, g, {});
    StrichartzOptions so;
    so.kind = kind;
    so.lambda = l;
    so.sigma = s;
    so.samples = samples;
    so.seed = 7;
    return strichartz_ratio(u, cl, time, g, so).sup;
  };
  const double unit = sup(256, 16, StrichartzKind::Homogeneous, 2, ExponentRational::infinity());
  o.need(std::abs(unit - 1.0) <= 1e-10, "(2,inf) |sup-1| " + num(std::abs(unit - 1.0)));
  for (const auto kind : {StrichartzKind::Homogeneous, StrichartzKind::Inhomogeneous, StrichartzKind::RetardedL1}) {
    const double base = sup(256, 32, kind, 6, 6);
    const double fine = sup(512, 64, kind, 6, 6);
    o.need(std::abs(fine - base) / base <= 0.10, to_string(kind) + " (6,6) " + num(base) + " -> " + num(fine));
  }
  // interacting vs free on the two-body scenario
  const Scenario sc = scenario("two_body");
  const ScenarioRuntime rt(sc);
  const auto grid = rt.grid();
  std::vector<StateVector> samples{rt.initial_state(grid)};
  for (auto& s : rt.random_states(grid, 2)) samples.push_back(std::move(s));
  const auto clusters = cluster_exponents(sc.hamiltonian.system, sc.hamiltonian.potentials);
  const TimeGrid t2(sc.start, sc.end, 64);
  const auto a = x_norm_ratios(*rt.propagator(grid), t2, samples, clusters);
  const auto b = x_norm_ratios(*rt.free_propagator(grid), t2, samples, clusters);
  const double ra = *std::max_element(a.begin(), a.end()), rb = *std::max_element(b.begin(), b.end());
  o.need(ra <= 3.0 * rb, "X(I) interacting " + num(ra) + " vs free " + num(rb));
}

// 8. Picard against a dense oracle on the regularized two-body problem
void picard_oracle(Outcome& o) {
  const Scenario sc = scenario("two_body");
  const ScenarioRuntime rt(sc);
  const auto grid = rt.grid();
  const auto h = rt.hamiltonian(grid);
  const auto f = rt.initial_state(grid);
  const PicardSolver solver(rt.free_propagator(grid), h, sc.picard);
  const auto result = solver.solve(f, 0.0, 1.0);
  double rho = 0.0;
  int nodes = 0;
  bool converged = true;
  for (const auto& p : result.pieces) {
    rho = std::max(rho, p.rho);
    nodes += p.intervals;
    converged = converged && p.converged;
  }
  BackendConfig dense;
  dense.magnus_order = 2;
  dense.dt = 1.0 / (4.0 * nodes);
  const auto oracle = Evolver(h, dense).evolve(f, 1.0, 0.0);
  const double err = distance(result.final_state(), oracle);
  o.need(converged && rho < 0.9, "rho " + num(rho));
  o.need(err < 1e-4, "endpoint vs oracle " + num(err));
  const double drift = std::abs(result.final_state().norm() - f.norm());
  o.need(drift < 1e-6, "norm drift " + num(drift));
  const PropagatorTable u(std::make_shared<const PicardSolver>(solver));
  double ck = 0.0;
  for (const auto& [t, r, s] : {std::tuple{1.0, 0.5, 0.0}, std::tuple{0.5, 0.5, 0.5}, std::tuple{0.25, 0.75, 1.0}}) {
    ck = std::max(ck, rel(u.apply(u.apply(f, r, s), t, r), u.apply(f, t, s)));
  }
  o.need(ck < 1e-6, "CK " + num(ck));
}

// 9. gauge covariance and the sigma = 2 operator identity
void gauge(Outcome& o) {
  const auto g = TensorGrid::uniform(1, 1, 10.0, 256);
  HamiltonianSpec spec;
  spec.fields = FieldSpec(1);
  spec.fields.add(ScalarTerm::radial_power(0.5, 1.0));
  HamiltonianSpec tilde = spec;
  tilde.fields = gauge_transform_fields(spec.fields, 1.0);
  BackendConfig c;
  c.magnus_order = 4;
  c.dt = 0.02;
  GaussianSpec gs;
  gs.center = Eigen::VectorXd::Constant(1, 0.5);
  gs.momentum = Eigen::VectorXd::Constant(1, 0.3);
  const auto f = gaussian_state(g, gs);
  const auto T = GaugeTransform::harmonic(1.0);
  const auto lhs = Evolver(std::make_shared<const Hamiltonian>(spec, g), c).evolve(f, 1.0, 0.0);
  const auto rhs = apply_gauge(
      T, spec.system, 1.0,
      Evolver(std::make_shared<const Hamiltonian>(tilde, g), c).evolve(apply_gauge(T, spec.system, 0.0, f, true), 1.0, 0.0));
  const double e = rel(rhs, lhs);
  o.need(e < 1e-6, "C=1 conjugation " + num(e));

  const auto ex = sigma_example(1, 2.0, 1.0);
  std::vector<double> res;
  for (int m : {32, 64, 128}) {
    const auto gm = TensorGrid::uniform(1, 1, 8.0, m);
    HamiltonianSpec hc, h0;
    hc.fields = ex.hamiltonian;
    h0.fields = ex.comparison;
    const Hamiltonian a(hc, gm), b(h0, gm);
    const auto phi = gaussian_state(gm);
    res.push_back(distance(apply_gauge(ex.gauge, hc.system, 1.0, a.apply(1.0, apply_gauge(ex.gauge, hc.system, 1.0, phi, true))),
                           b.apply(1.0, phi)));
  }
  o.need(res[1] < res[0] && res[2] < res[1], "sigma=2 residual " + num(res[0]) + " -> " + num(res[1]) + " -> " + num(res[2]));
}

// 10. Sigma(2) bound and strong-equation order
void sigma2(Outcome& o) {
  const Scenario sc = scenario("sigma2_harmonic");
  const ScenarioRuntime rt(sc);
  const auto grid = rt.grid();
  const auto u = rt.propagator(grid);
  const auto h = rt.hamiltonian(grid);
  const auto f = rt.initial_state(grid);
  const double s0 = sigma_k_norm(f, 2);
  double growth = 0.0;
  std::vector<double> res;
  const std::vector<int> steps{8, 16, 32};
  for (int k : steps) {
    const TimeGrid tg(sc.start, sc.end, k, QuadratureRule::Trapezoid);
    const auto traj = evolve_along(*u, tg, f);
    double worst = 0.0;
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
      growth = std::max(growth, sigma_k_norm(traj.states[n], 2) / s0);
      if (n == 0 || n + 1 == traj.states.size()) continue;
      StateVector r = cplx(0.0, 0.5 / tg.step()) * (traj.states[n + 1] - traj.states[n - 1]);
      r -= h->apply(traj.times[n], traj.states[n]);
      worst = std::max(worst, r.norm());
    }
    res.push_back(worst);
  }
  double order = 1e9;
  for (std::size_t i = 1; i < res.size(); ++i) order = std::min(order, std::log2(res[i - 1] / res[i]));
  o.need(growth <= 10.0, "growth " + num(growth));
  o.need(order >= 1.8, "order " + num(order));
}

// 11. integral identities with Simpson
void identities(Outcome& o) {
  const Scenario sc = scenario("identities");
  const ScenarioRuntime rt(sc);
  const auto grid = rt.grid();
  const Hamiltonian h0(rt.free_spec(), grid);
  const auto free = rt.free_propagator(grid);
  const auto f = rt.initial_state(grid);
  for (const auto kind : {IdentityKind::Id1, IdentityKind::Id2}) {
    const auto ref = identity_refinement(kind, h0, *free, f, 1.0, 0.0, {16, 32, 64}, QuadratureRule::Simpson);
    const double last = ref.levels.back().residual;
    const double order = ref.observed_orders.back();
    o.need(last < 1e-5 && std::abs(order - 4.0) <= 0.5,
           to_string(kind) + " K=64 " + num(last) + ", order " + num(order));
  }
}

// 12. negative controls through the CLI
void negative_controls(Outcome& o) {
  for (const std::string name : {"broken_hermiticity", "over_singular"}) {
    const std::string cmd = "\"" + kCli + "\" verify --config \"" + kScenarios + "/controls/" + name +
                            ".json\" --out \"" + std::string(STRICHARTZ_ACCEPTANCE_OUT) + "/" + name + "\" > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.need(code == 1, name + " exit " + std::to_string(code));
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"exponent calculus exactness", exponent_calculus},
      {"gamma-threshold reproduction", gamma_threshold},
      {"free-particle oracle", free_oracle},
      {"harmonic recurrence", harmonic_recurrence},
      {"operator lower bounds", operator_bounds},
      {"dispersive decay", dispersive},
      {"Strichartz boundedness", strichartz_bounds},
      {"Picard vs oracle", picard_oracle},
      {"gauge covariance", gauge},
      {"Sigma(2) invariance", sigma2},
      {"identity checks", identities},
      {"negative controls", negative_controls},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " error: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s %2zu %-30s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
