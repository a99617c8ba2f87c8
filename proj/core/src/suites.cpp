#include "strichartz/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "strichartz/error.hpp"
#include "strichartz/exponents.hpp"
#include "strichartz/identities.hpp"
#include "strichartz/kernels.hpp"
#include "strichartz/operators.hpp"

namespace strichartz {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

SuiteReport start_report(const std::string& suite, const ScenarioRuntime& rt) {
  SuiteReport r;
  r.suite = suite;
  r.scenario = rt.scenario().name;
  r.seed = rt.scenario().seed;
  if (rt.scenario().grid) r.grid = describe_grid(*rt.grid());
  return r;
}

ClusterSpec all_particles(const ParticleSystem& sys) {
  std::vector<int> members;
  for (int j = 1; j <= sys.particle_count(); ++j) members.push_back(j);
  return sys.cluster(members);
}

ExponentRational to_rational(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return ExponentRational::parse(buf);
}

double relative_distance(const StateVector& a, const StateVector& b) {
  const double n = b.norm();
  return n > 0 ? distance(a, b) / n : distance(a, b);
}

double time_of(const Scenario& s, double x) { return s.start + x * (s.end - s.start); }

long steps_for(const Scenario& s) {
  return std::lround(std::ceil(std::abs(s.end - s.start) / s.backend.dt));
}

}  // namespace

std::string describe_grid(const TensorGrid& grid) {
  std::ostringstream os;
  for (int a = 0; a < grid.axis_count(); ++a) os << (a ? "x" : "") << grid.axis(a).points;
  os << " on ";
  for (int a = 0; a < grid.axis_count(); ++a) {
    os << (a ? "x" : "") << "[-" << fmt(grid.axis(a).extent) << "," << fmt(grid.axis(a).extent) << "]";
  }
  return os.str();
}

SuiteReport exponents_suite(const ScenarioRuntime& rt, const Tolerances&) {
  SuiteReport r = start_report("exponents", rt);
  const ExponentRational p3(3);
  r.add(flag("a(3)=2 for n=3", a_of_p(3, p3) == ExponentRational(2), "a = " + a_of_p(3, p3).to_string()));
  const auto pair = strichartz_pair(3, p3);
  r.add(flag("(l,theta)=(3,4) for n=3, p=3", pair.l == ExponentRational(3) && pair.theta == ExponentRational(4),
             "(" + pair.l.to_string() + ", " + pair.theta.to_string() + ")"));
  const auto a_inf = a_of_p(3, ExponentRational::infinity());
  r.add(flag("a(inf)=1", a_inf == ExponentRational(1), "a = " + a_inf.to_string()));
  r.add(flag("(6,2) admissible for n=3", is_admissible(3, ExponentRational(6), ExponentRational(2))));
  const auto de = derivative_exponents(3, ExponentRational(3, 2));
  r.add(flag("(b,q)=(2,6/5) for n=3, p=3/2", de.b == ExponentRational(2) && de.q == ExponentRational(6, 5),
             "(" + de.b.to_string() + ", " + de.q.to_string() + ")"));

  // strichartz_pair always lands on an admissible pair.
  int checked = 0, failures = 0;
  for (int n = 1; n <= 8; ++n) {
    for (std::int64_t num = 1; num <= 64; ++num) {
      for (const std::int64_t den : {1, 2, 3, 4, 7}) {
        const ExponentRational p(num, den);
        if (p < ExponentRational(1)) continue;
        StrichartzPair sp;
        try {
          sp = strichartz_pair(n, p);
        } catch (const Error&) {
          continue;  // outside the pair's domain
        }
        ++checked;
        if (!is_admissible(n, sp.l, sp.theta)) ++failures;
      }
    }
    const auto sp = strichartz_pair(n, ExponentRational::infinity());
    ++checked;
    if (!is_admissible(n, sp.l, sp.theta)) ++failures;
  }
  r.add(at_most("strichartz_pair inadmissible outputs", failures, 0,
                std::to_string(checked) + " (n, p) combinations"));
  return r;
}

SuiteReport classification_suite(const ScenarioRuntime& rt, const Tolerances&) {
  SuiteReport r = start_report("classification", rt);
  const auto& opt = rt.scenario().options.classification;
  const auto scan3 = scan_gamma_threshold(3, Assumption::V2, opt.gamma_denominator, ExponentRational(3));
  r.add(at_least("n=3 V-2 boundary lower", scan3.boundary, 1.49,
                 "last feasible " + scan3.last_feasible.to_string() + ", first infeasible " +
                     scan3.first_infeasible.to_string()));
  r.add(at_most("n=3 V-2 boundary upper", scan3.boundary, 1.51));
  r.add(flag("gamma=0 feasible (n=3)",
             classify_power_potential(3, ExponentRational(0), Assumption::V2).feasible));
  for (const int n : opt.dimensions) {
    for (const Assumption a : {Assumption::V1, Assumption::V2}) {
      const auto scan = scan_gamma_threshold(n, a, 20, ExponentRational(n));
      r.add(flag("monotone in gamma, n=" + std::to_string(n) + ", " + to_string(a), scan.monotone,
                 "boundary " + fmt(scan.boundary)));
    }
  }
  // The scenario's own power-law terms.
  const auto& sys = rt.scenario().hamiltonian.system;
  for (const auto& term : rt.scenario().hamiltonian.potentials) {
    if (term.profile != PotentialTerm::Profile::PowerLaw) continue;
    const int n = relative_dimension(sys.cluster(term.cluster));
    const ExponentRational gamma = to_rational(term.gamma);
    const auto rep = classify_power_potential(n, gamma, opt.assumption);
    std::string label = "potential gamma=" + gamma.to_string() + ", n_D=" + std::to_string(n) +
                        " feasible under " + to_string(opt.assumption);
    r.add(flag(label, rep.feasible,
               rep.witness ? "witness p = " + rep.witness->to_string() : "no feasible p"));
  }
  return r;
}

SuiteReport free_oracle_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("free_oracle", rt);
  const Scenario& sc = rt.scenario();
  require(sc.hamiltonian.fields.scalar_terms().empty() && !sc.hamiltonian.fields.has_vector_potential() &&
              sc.hamiltonian.potentials.empty(),
          ErrorKind::Config, "free_oracle needs a scenario without fields and potentials");
  require(sc.initial.kind == InitialStateConfig::Kind::Gaussian && sc.hamiltonian.system.particle_count() == 1 &&
              sc.hamiltonian.system.dimension() == 1,
          ErrorKind::Config, "free_oracle needs one particle in d=1 with Gaussian data");
  const GridPtr grid = rt.grid();
  const auto u0 = rt.initial_state(grid);
  const auto free = rt.free_propagator(grid);
  const double m = sc.hamiltonian.system.mass(0);
  const double w = sc.initial.gaussian.width.size() ? sc.initial.gaussian.width[0] : 1.0;

  // <(x - <x>)^2>(t) = (w^2 / 2)(1 + t^2 / (m^2 w^4)) for exp(-(x-c)^2 / (2 w^2)).
  double worst = 0.0, edge = 0.0;
  const int samples = std::max(2, sc.options.free_oracle.variance_samples);
  for (int i = 0; i < samples; ++i) {
    const double tau = (sc.end - sc.start) * i / (samples - 1);
    const auto u = free->apply(u0, sc.start + tau, sc.start);
    double mean = 0.0, second = 0.0;
    for (std::int64_t k = 0; k < grid->size(); ++k) {
      const double x = grid->axis(0).coordinate(static_cast<int>(k));
      const double rho = std::norm(u.values()[k]) * grid->cell_volume();
      mean += x * rho;
      second += x * x * rho;
    }
    const double var = second - mean * mean;
    const double expected = 0.5 * w * w * (1.0 + tau * tau / (m * m * w * w * w * w));
    worst = std::max(worst, std::abs(var - expected) / expected);
    edge = std::max(edge, boundary_mass(u));
  }
  r.add(at_most("variance relative error", worst, tol.free_variance,
                std::to_string(samples) + " times in [" + fmt(sc.start) + ", " + fmt(sc.end) + "]"));
  r.add(at_most("boundary mass", edge, 1e-8));

  const double tau = sc.options.free_oracle.kernel_time;
  const auto spectral = free->apply(u0, sc.start + tau, sc.start);
  const auto kernel = exact_kernel_apply(ExactKernel::free(m), sc.start + tau, sc.start, u0);
  r.add(at_most("exact kernel vs spectral (L2)", distance(spectral, kernel), tol.free_kernel,
                "t - s = " + fmt(tau)));
  r.steps = 1;
  return r;
}

SuiteReport recurrence_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("recurrence", rt);
  const Scenario& sc = rt.scenario();
  const auto& opt = sc.options.recurrence;
  const GridPtr grid = rt.grid();
  const auto u0 = rt.initial_state(grid);
  const double period = 2.0 * M_PI / opt.omega;
  const StateVector minus = cplx(-1.0) * u0;
  auto h = rt.hamiltonian(grid);

  BackendConfig dense = sc.backend;
  dense.kind = BackendKind::DenseExponential;
  const Evolver exact(h, dense);
  r.add(at_most("dense: |u(T) + u(0)|", relative_distance(exact.evolve(u0, sc.start + period, sc.start), minus),
                tol.recurrence_dense, "T = 2 pi / omega"));

  BackendConfig split = sc.backend;
  split.kind = BackendKind::SplitStep;
  split.dt = opt.split_dt;
  const Evolver strang(h, split);
  r.add(at_most("split-step: |u(T) + u(0)|",
                relative_distance(strang.evolve(u0, sc.start + period, sc.start), minus), tol.recurrence_split,
                "dt = " + fmt(opt.split_dt)));

  if (grid->axis_count() == 1) {
    const auto k = ExactKernel::mehler(sc.hamiltonian.system.mass(0), opt.omega);
    StateVector v = u0;
    for (int q = 0; q < 4; ++q) {
      v = exact_kernel_apply(k, sc.start + (q + 1) * period / 4, sc.start + q * period / 4, v);
    }
    r.add(at_most("Mehler kernel, four quarter periods", relative_distance(v, minus), tol.recurrence_dense));
  }
  r.steps = strang.step_count(sc.start + period, sc.start);
  return r;
}

SuiteReport operator_bounds_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("operator_bounds", rt);
  const Scenario& sc = rt.scenario();
  const auto& opt = sc.options.operator_bounds;
  const auto g1 = TensorGrid::uniform(1, 1, opt.hos_extent, opt.hos_points);
  const auto g2 = TensorGrid::uniform(1, 2, opt.hos_extent, std::max(8, opt.hos_points / 2));
  const double e1 = hos_ground_energy(g1);
  const double e2 = hos_ground_energy(g2);
  r.add(at_most("H_os ground energy n=1: |E - 1/2|", std::abs(e1 - 0.5), tol.ground_energy, "E = " + fmt(e1)));
  r.add(at_most("H_os ground energy n=2: |E - 1|", std::abs(e2 - 1.0), tol.ground_energy, "E = " + fmt(e2)));

  if (sc.grid) {
    const auto lb = h0_lower_bound_check(sc.hamiltonian, rt.grid(), sc.start);
    if (!lb.hypothesis_met) {
      r.notes.push_back("H0 lower bound: hypothesis phi >= <x>^2/2 not met (margin " +
                        fmt(lb.hypothesis_margin) + "); check skipped");
    } else {
      r.add(at_least("H0 lambda_min + tol_disc vs (Nd+1)/2", lb.lambda_min + lb.tol_disc, lb.bound,
                     "lambda_min = " + fmt(lb.lambda_min) + ", tol_disc = " + fmt(lb.tol_disc)));
    }
  }

  const auto inv = hos_inverse_properties(g1, opt.interior_fraction);
  r.add(at_least("H_os^{-1} kernel min on interior", inv.kernel_min, 0.0,
                 "|x|,|y| <= " + fmt(inv.interior_radius)));
  r.checks.back().pass = inv.kernel_min > 0.0;
  r.add(at_most("||H_os^{-1}||", inv.inverse_norm, 2.0 * (1.0 + tol.ground_energy), "bound 2 = 1 / (n/2)"));
  double worst_weighted = 0.0;
  for (const auto& wn : inv.norms) worst_weighted = std::max(worst_weighted, wn.norm);
  r.add(flag("weighted inverse norms finite", std::isfinite(worst_weighted),
             "max ||x^a d^b H^{-1} x^c d^e|| = " + fmt(worst_weighted)));
  const auto fine = hos_inverse_properties(TensorGrid::uniform(1, 1, opt.hos_extent, 2 * opt.hos_points),
                                           opt.interior_fraction);
  r.add(at_most("||d x H_os^{-1}|| change under refinement (interior inputs)",
                std::abs(fine.dx_inverse_norm - inv.dx_inverse_norm) / inv.dx_inverse_norm, tol.hos_refinement,
                fmt(inv.dx_inverse_norm) + " -> " + fmt(fine.dx_inverse_norm)));
  r.add(flag("kernel decays", inv.decay_rate > 0.0, "fitted rate " + fmt(inv.decay_rate)));
  return r;
}

SuiteReport dispersive_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("dispersive", rt);
  const Scenario& sc = rt.scenario();
  const auto& sys = sc.hamiltonian.system;
  const GridPtr grid = rt.grid();
  const auto u = rt.initial_state(grid);
  const auto free = rt.free_propagator(grid);
  std::vector<ClusterSpec> clusters;
  for (const auto& c : sc.options.dispersive.clusters) clusters.push_back(sys.cluster(c));
  if (clusters.empty()) clusters.push_back(all_particles(sys));
  DispersiveOptions fit = sc.options.dispersive.fit;
  fit.slope_tolerance = tol.dispersive_slope;
  for (const auto& cl : clusters) {
    const auto rep = dispersive_decay_fit(*free, cl, u, sc.start, fit);
    std::ostringstream name;
    name << "slope error, D={";
    for (std::size_t i = 0; i < cl.members().size(); ++i) name << (i ? "," : "") << cl.members()[i];
    name << "}";
    r.add(at_most(name.str(), rep.relative_error, tol.dispersive_slope,
                  "slope " + fmt(rep.slope) + " vs " + fmt(rep.expected) + ", max boundary mass " +
                      fmt(rep.max_boundary_mass)));
    r.steps += static_cast<long>(rep.times.size());
  }
  return r;
}

SuiteReport strichartz_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("strichartz", rt);
  const Scenario& sc = rt.scenario();
  const auto& opt = sc.options.strichartz;
  const auto& sys = sc.hamiltonian.system;
  const ClusterSpec cluster = opt.cluster.empty() ? all_particles(sys) : sys.cluster(opt.cluster);
  const GridPtr grid = rt.grid();
  const auto free = rt.free_propagator(grid);
  const TimeGrid time(sc.start, sc.end, opt.time_intervals);
  auto pairs = opt.pairs;
  if (pairs.empty()) pairs.emplace_back(ExponentRational(2), ExponentRational::infinity());

  for (const auto& [lambda, sigma] : pairs) {
    for (const auto kind : opt.kinds) {
      StrichartzOptions so;
      so.kind = kind;
      so.lambda = lambda;
      so.sigma = sigma;
      so.samples = opt.samples;
      so.seed = sc.seed;
      so.field = opt.field;
      const std::string label = to_string(kind) + " (" + lambda.to_string() + "," + sigma.to_string() + ")";
      const auto base = strichartz_ratio(*free, cluster, time, grid, so);
      const bool unit_pair = lambda == ExponentRational(2) && sigma.is_infinite();
      if (unit_pair && kind == StrichartzKind::Homogeneous) {
        r.add(at_most(label + ": |sup - 1|", std::abs(base.sup - 1.0), tol.strichartz_unit));
        continue;
      }
      if (!opt.refinement) {
        r.add(flag(label + ": sup finite", std::isfinite(base.sup), "sup " + fmt(base.sup)));
        continue;
      }
      const GridPtr fine = rt.refined_grid(2);
      const auto refined = strichartz_ratio(*rt.free_propagator(fine), cluster, time, fine, so);
      StrichartzOptions more = so;
      more.samples = 2 * so.samples;
      const auto sampled = strichartz_ratio(*free, cluster, time, grid, more);
      const double change = std::max(std::abs(refined.sup - base.sup), std::abs(sampled.sup - base.sup)) / base.sup;
      r.add(at_most(label + ": sup change under refinement", change, tol.strichartz_refinement,
                    "sup " + fmt(base.sup) + ", 2M " + fmt(refined.sup) + ", 2S " + fmt(sampled.sup)));
    }
  }

  if (!sc.hamiltonian.potentials.empty() && opt.comparison_samples > 0) {
    const auto clusters = cluster_exponents(sys, sc.hamiltonian.potentials);
    RandomFieldSpec field = opt.field;
    std::vector<StateVector> samples;
    for (int i = 0; i < opt.comparison_samples; ++i) {
      samples.push_back(random_field_state(grid, field, sc.seed + static_cast<std::uint64_t>(i)));
    }
    const auto interacting = x_norm_ratios(*rt.propagator(grid), time, samples, clusters);
    const auto baseline = x_norm_ratios(*free, time, samples, clusters);
    const double a = *std::max_element(interacting.begin(), interacting.end());
    const double b = *std::max_element(baseline.begin(), baseline.end());
    r.add(at_most("X(I) ratio interacting / free", a / b, tol.strichartz_interacting,
                  "interacting " + fmt(a) + ", free " + fmt(b)));
  }
  r.steps = opt.time_intervals;
  return r;
}

SuiteReport unitarity_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("unitarity", rt);
  const Scenario& sc = rt.scenario();
  const GridPtr grid = rt.grid();
  const auto u = rt.propagator(grid);
  std::vector<StateVector> states{rt.initial_state(grid)};
  for (auto& s : rt.random_states(grid, sc.options.unitarity.random_states)) states.push_back(std::move(s));
  double worst = 0.0;
  for (const auto& f : states) {
    const auto v = u->apply(f, sc.end, sc.start);
    worst = std::max(worst, std::abs(v.norm() - f.norm()) / f.norm());
  }
  r.add(at_most("max relative norm drift", worst, tol.unitarity,
                std::to_string(states.size()) + " states over [" + fmt(sc.start) + ", " + fmt(sc.end) + "]"));
  if (grid->size() <= 1024) {
    const auto h = rt.hamiltonian(grid);
    const auto m = h->dense(h->at(sc.start));
    r.add(at_most("hermiticity defect of H(start)", m.hermiticity_defect, 1e-10));
  }
  if (sc.hamiltonian.anti_hermitian_defect != 0.0) {
    r.notes.push_back("test mode: anti-hermitian defect " + fmt(sc.hamiltonian.anti_hermitian_defect) + " injected");
  }
  r.steps = steps_for(sc);
  return r;
}

SuiteReport ck_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("ck", rt);
  const Scenario& sc = rt.scenario();
  const GridPtr grid = rt.grid();
  const auto u = rt.propagator(grid);
  const auto f = rt.initial_state(grid);
  for (const auto& tr : sc.options.ck.triples) {
    const double t = time_of(sc, tr[0]), mid = time_of(sc, tr[1]), s = time_of(sc, tr[2]);
    const auto direct = u->apply(f, t, s);
    const auto composed = u->apply(u->apply(f, mid, s), t, mid);
    r.add(at_most("(t,r,s)=(" + fmt(t) + "," + fmt(mid) + "," + fmt(s) + ")", relative_distance(composed, direct),
                  tol.ck));
  }
  r.steps = steps_for(sc);
  return r;
}

SuiteReport picard_oracle_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("picard_oracle", rt);
  const Scenario& sc = rt.scenario();
  require(!sc.hamiltonian.potentials.empty(), ErrorKind::Config, "picard_oracle needs potentials");
  const GridPtr grid = rt.grid();
  const auto f = rt.initial_state(grid);
  const auto h = rt.hamiltonian(grid);
  const PicardSolver solver(rt.free_propagator(grid), h, sc.picard);
  const auto result = solver.solve(f, sc.start, sc.end - sc.start);

  double rho = 0.0;
  bool converged = true;
  int nodes = 0;
  for (const auto& piece : result.pieces) {
    rho = std::max(rho, piece.rho);
    converged = converged && piece.converged;
    nodes += piece.intervals;
  }
  r.add(flag("all subintervals converged", converged, std::to_string(result.pieces.size()) + " subintervals"));
  r.add(at_most("observed contraction ratio rho", rho, tol.picard_rho));
  const auto end = result.final_state();
  r.add(at_most("relative norm drift", std::abs(end.norm() - f.norm()) / f.norm(), tol.picard_unitarity));

  BackendConfig dense = sc.backend;
  dense.kind = BackendKind::DenseExponential;
  dense.magnus_order = 2;
  dense.dt = std::abs(sc.end - sc.start) / (static_cast<double>(nodes) * sc.options.picard_oracle.oracle_refinement);
  const Evolver oracle(h, dense);
  const auto reference = oracle.evolve(f, sc.end, sc.start);
  r.add(at_most("endpoint vs dense Magnus-2 oracle (L2)", distance(end, reference), tol.picard_oracle,
                "oracle dt = " + fmt(dense.dt)));
  if (h->time_independent()) {
    r.notes.push_back("H is time independent: the oracle is exact diagonalization regardless of dt");
  }
  r.steps = nodes;
  return r;
}

SuiteReport gauge_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("gauge", rt);
  const Scenario& sc = rt.scenario();
  require(sc.gauge_coefficient.has_value(), ErrorKind::Config, "gauge suite needs a gauge coefficient");
  const double c = *sc.gauge_coefficient;
  const GridPtr grid = rt.grid();
  const auto f = rt.initial_state(grid);
  const auto& sys = sc.hamiltonian.system;

  HamiltonianSpec transformed = sc.hamiltonian;
  transformed.fields = gauge_transform_fields(sc.hamiltonian.fields, c);
  auto make = [&](const HamiltonianSpec& spec) -> std::shared_ptr<const Propagator> {
    if (spec.potentials.empty()) return std::make_shared<const TensorPropagator>(spec, grid, sc.backend);
    return std::make_shared<const EvolverPropagator>(
        std::make_shared<const Evolver>(std::make_shared<const Hamiltonian>(spec, grid), sc.backend));
  };
  const auto u = make(sc.hamiltonian);
  const auto u_tilde = make(transformed);
  const GaugeTransform gauge = GaugeTransform::harmonic(c);
  const auto lhs = u->apply(f, sc.end, sc.start);
  const auto rhs = apply_gauge(gauge, sys, sc.end,
                               u_tilde->apply(apply_gauge(gauge, sys, sc.start, f, true), sc.end, sc.start));
  if (c == 0.0) {
    r.add(at_most("C=0: trajectories identical", distance(lhs, rhs), 0.0));
  } else {
    r.add(at_most("U = T(t) U~ T(s)^{-1} (L2)", relative_distance(rhs, lhs), tol.gauge, "C = " + fmt(c)));
  }

  // sigma example at the operator level on Gaussians.
  const auto& go = sc.options.gauge;
  const auto ex = sigma_example(sys.dimension(), go.sigma, go.sigma_coefficient);
  std::vector<double> residuals;
  std::string trail;
  for (const int m : go.sigma_points) {
    const auto g = TensorGrid::uniform(1, sys.dimension(), go.sigma_extent, m);
    HamiltonianSpec hc, h0;
    hc.system = ParticleSystem::uniform(1, sys.dimension());
    h0.system = hc.system;
    hc.fields = ex.hamiltonian;
    h0.fields = ex.comparison;
    const Hamiltonian hc_op(hc, g), h0_op(h0, g);
    const auto phi = gaussian_state(g);
    const double t = go.sigma_time;
    const auto conj = apply_gauge(ex.gauge, hc.system, t,
                                  hc_op.apply(t, apply_gauge(ex.gauge, hc.system, t, phi, true)));
    residuals.push_back(distance(conj, h0_op.apply(t, phi)));
    trail += (trail.empty() ? "" : " -> ") + fmt(residuals.back());
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < residuals.size(); ++i) decreasing = decreasing && residuals[i] < residuals[i - 1];
  r.add(flag("sigma example: T H_C T* - H_C0 decreases under refinement", decreasing, trail));
  if (go.sigma > 2.0) {
    r.notes.push_back("sigma > 2: non-uniqueness of the dynamics is out of scope");
  }
  r.steps = steps_for(sc);
  return r;
}

SuiteReport sigma2_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("sigma2", rt);
  const Scenario& sc = rt.scenario();
  const auto& opt = sc.options.sigma2;
  const GridPtr grid = rt.grid();
  const auto f = rt.initial_state(grid);
  const auto u = rt.propagator(grid);
  const auto h = rt.hamiltonian(grid);
  const double s0 = sigma_k_norm(f, 2);

  ScanOptions scan;
  scan.times = {sc.start, 0.5 * (sc.start + sc.end), sc.end};
  const auto assumptions = assumption_scan(sc.hamiltonian.fields, scan);
  if (const auto* c = assumptions.find("phi-t-growth"); c && !c->pass) {
    r.notes.push_back("|d_t phi| <= C <x>^2 not confirmed by the sampled scan");
  }

  std::vector<double> residuals, increments;
  double growth = 0.0;
  for (const int k : opt.steps) {
    const TimeGrid tg(sc.start, sc.end, k, QuadratureRule::Trapezoid);
    const Trajectory traj = evolve_along(*u, tg, f);
    const double dt = tg.step();
    double worst = 0.0, inc = 0.0, prev = s0;
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
      const double s2 = sigma_k_norm(traj.states[n], 2);
      growth = std::max(growth, s2 / s0);
      if (n > 0) inc = std::max(inc, std::abs(s2 - prev));
      prev = s2;
      if (n == 0 || n + 1 == traj.states.size()) continue;
      StateVector res = cplx(0.0, 1.0 / (2.0 * dt)) * (traj.states[n + 1] - traj.states[n - 1]);
      res -= h->apply(traj.times[n], traj.states[n]);
      worst = std::max(worst, res.norm());
    }
    residuals.push_back(worst);
    increments.push_back(inc);
  }
  r.add(at_most("Sigma(2) growth over the run", growth, tol.sigma2_growth));
  double order = std::numeric_limits<double>::infinity();
  std::string trail;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    trail += (i ? " -> " : "") + fmt(residuals[i]);
    if (i == 0) continue;
    const double ratio = static_cast<double>(opt.steps[i]) / opt.steps[i - 1];
    order = std::min(order, std::log(residuals[i - 1] / residuals[i]) / std::log(ratio));
  }
  r.add(at_least("strong residual observed order", order, tol.sigma2_order, trail));
  r.add(flag("Sigma(2) increments shrink under refinement", increments.back() < increments.front() || increments.front() < 1e-12,
             fmt(increments.front()) + " -> " + fmt(increments.back())));
  if (opt.period) {
    const auto back = u->apply(f, sc.start + *opt.period, sc.start);
    r.add(at_most("Sigma(2) periodicity", std::abs(sigma_k_norm(back, 2) - s0) / s0, tol.sigma2_period,
                  "period " + fmt(*opt.period)));
  }
  r.notes.push_back("strong residual measured in L2 on Sigma(2) data; the weak form would use the (1+H_os)^{-1} surrogate");
  r.steps = opt.steps.back();
  return r;
}

SuiteReport identities_suite(const ScenarioRuntime& rt, const Tolerances& tol) {
  SuiteReport r = start_report("identities", rt);
  const Scenario& sc = rt.scenario();
  const auto& opt = sc.options.identities;
  const GridPtr grid = rt.grid();
  const auto f = rt.initial_state(grid);
  const Hamiltonian h0(rt.free_spec(), grid);
  const auto free = rt.free_propagator(grid);
  const double rule_order = opt.rule == QuadratureRule::Simpson ? 4.0 : 2.0;
  for (const auto kind : {IdentityKind::Id1, IdentityKind::Id2}) {
    const auto ref = identity_refinement(kind, h0, *free, f, sc.end, sc.start, opt.intervals, opt.rule);
    const auto& last = ref.levels.back();
    r.add(at_most(to_string(kind) + " residual, K=" + std::to_string(last.intervals), last.residual, tol.identity));
    double worst = 0.0;
    std::string orders;
    for (const double o : ref.observed_orders) {
      worst = std::max(worst, std::abs(o - rule_order));
      orders += (orders.empty() ? "" : ", ") + fmt(o);
    }
    r.add(at_most(to_string(kind) + " |observed order - " + fmt(rule_order) + "|", worst, tol.identity_order,
                  "orders " + orders));
  }
  r.steps = opt.intervals.back();
  return r;
}

SuiteReport run_suite(const std::string& name, const Scenario& scenario, const SuiteContext& context) {
  const auto& known = known_suites();
  require(std::find(known.begin(), known.end(), name) != known.end(), ErrorKind::Config,
          "unknown suite '" + name + "'");
  Scenario sc = scenario;
  if (context.seed) sc.seed = *context.seed;
  const ScenarioRuntime rt(sc);
  const Tolerances tol = sc.tolerances.scaled(context.tolerance_scale);
  using Fn = SuiteReport (*)(const ScenarioRuntime&, const Tolerances&);
  static const std::vector<std::pair<std::string, Fn>> table{
      {"exponents", exponents_suite},     {"classification", classification_suite},
      {"free_oracle", free_oracle_suite}, {"recurrence", recurrence_suite},
      {"operator_bounds", operator_bounds_suite}, {"dispersive", dispersive_suite},
      {"strichartz", strichartz_suite},   {"unitarity", unitarity_suite},
      {"ck", ck_suite},                   {"picard_oracle", picard_oracle_suite},
      {"gauge", gauge_suite},             {"sigma2", sigma2_suite},
      {"identities", identities_suite}};
  for (const auto& [key, fn] : table) {
    if (key != name) continue;
    try {
      return fn(rt, tol);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Config) throw;
      SuiteReport r;
      r.suite = name;
      r.scenario = sc.name;
      r.seed = sc.seed;
      r.error = e.what();
      return r;
    }
  }
  fail(ErrorKind::Config, "unknown suite '" + name + "'");
}

}  // namespace strichartz
