// strichartz_lab: exponent queries, scenario simulation and verification.
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "strichartz/error.hpp"
#include "strichartz/exponents.hpp"
#include "strichartz/operators.hpp"
#include "strichartz/state_io.hpp"
#include "strichartz/suites.hpp"

namespace fs = std::filesystem;
using namespace strichartz;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

ExponentRational rational_arg(const std::string& text, const char* what) {
  try {
    return ExponentRational::parse(text);
  } catch (const Error& e) {
    throw CLI::ValidationError(what, "malformed rational '" + text + "'");
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

int cmd_exponents(int n, const std::string& p_text) {
  const ExponentRational p = rational_arg(p_text, "--p");
  std::cout << "n = " << n << ", p = " << p << "\n";
  auto line = [](const std::string& label, const std::function<std::string()>& f) {
    std::cout << "  " << std::left << std::setw(12) << label;
    try {
      std::cout << f() << "\n";
    } catch (const Error& e) {
      std::cout << "undefined (" << e.what() << ")\n";
    }
  };
  line("a(p)", [&] { return a_of_p(n, p).to_string(); });
  line("(l, theta)", [&] {
    const auto pr = strichartz_pair(n, p);
    return "(" + pr.l.to_string() + ", " + pr.theta.to_string() + ")" +
           (is_admissible(n, pr.l, pr.theta) ? "  admissible" : "  NOT admissible");
  });
  line("(b, q, p~)", [&] {
    const auto d = derivative_exponents(n, p);
    return "(" + d.b.to_string() + ", " + d.q.to_string() + ", " + d.p_tilde.to_string() + ")";
  });
  return kExitPass;
}

int cmd_admissible(int n, const std::string& l_text, const std::string& sigma_text) {
  const auto l = rational_arg(l_text, "--l");
  const auto sigma = rational_arg(sigma_text, "--sigma");
  std::cout << (is_admissible(n, l, sigma) ? "true" : "false") << "\n";
  return kExitPass;
}

int cmd_classify(int n, const std::string& gamma_text, const std::string& assumption) {
  const auto gamma = rational_arg(gamma_text, "--gamma");
  const auto rep = classify_power_potential(n, gamma, parse_assumption(assumption));
  std::cout << "n = " << n << ", gamma = " << gamma << ", assumption " << to_string(rep.assumption) << "\n";
  std::cout << "  " << (rep.feasible ? "feasible" : "infeasible");
  if (rep.witness) std::cout << ", witness p = " << *rep.witness;
  std::cout << "\n";
  if (rep.p_low && rep.p_high) {
    std::cout << "  feasible p range on grid: [" << *rep.p_low << ", " << *rep.p_high << "] ("
              << rep.feasible_count << " of " << rep.scanned_count << ")\n";
  }
  if (rep.assumption == Assumption::V1) {
    std::cout << "  tilde branch (p = inf, n/2): " << (rep.tilde_branch_feasible ? "feasible" : "infeasible")
              << "\n  weighted branch: "
              << (rep.weighted_branch_witness ? "feasible, p = " + rep.weighted_branch_witness->to_string()
                                              : std::string("infeasible"))
              << "\n";
  }
  if (rep.witness_exponents) {
    const auto& d = *rep.witness_exponents;
    std::cout << "  (b, q, p~) at witness: (" << d.b << ", " << d.q << ", " << d.p_tilde << ")\n";
  }
  return kExitPass;
}

std::string two_column(const std::string& header, const std::vector<double>& x, const std::vector<double>& y) {
  std::ostringstream os;
  os << "# " << header << "\n" << std::setprecision(12);
  for (std::size_t i = 0; i < x.size(); ++i) os << x[i] << " " << y[i] << "\n";
  return os.str();
}

double spread(const StateVector& u) {
  const TensorGrid& g = u.grid();
  const int axes = g.axis_count();
  std::vector<double> mean(static_cast<std::size_t>(axes), 0.0), second(mean);
  std::vector<int> idx;
  for (std::int64_t k = 0; k < g.size(); ++k) {
    g.unravel(k, idx);
    const double rho = std::norm(u.values()[k]) * g.cell_volume();
    for (int a = 0; a < axes; ++a) {
      const double x = g.axis(a).coordinate(idx[a]);
      mean[a] += x * rho;
      second[a] += x * x * rho;
    }
  }
  double v = 0.0;
  for (int a = 0; a < axes; ++a) v += second[a] - mean[a] * mean[a];
  return v;
}

int cmd_simulate(const std::string& config, const std::string& out_flag, std::optional<std::uint64_t> seed) {
  Scenario sc = load_scenario(config);
  if (seed) sc.seed = *seed;
  const fs::path out = out_flag.empty() ? fs::path(sc.output) : fs::path(out_flag);
  fs::create_directories(out);
  const ScenarioRuntime rt(sc);
  const GridPtr grid = rt.grid();
  const StateVector f = rt.initial_state(grid);

  Trajectory traj;
  std::string convergence;
  if (sc.end == sc.start) {
    traj.times = {sc.start};
    traj.states = {f};
  } else if (!sc.hamiltonian.potentials.empty() && sc.propagator != PropagatorChoice::Direct) {
    const PicardSolver solver(rt.free_propagator(grid), rt.hamiltonian(grid), sc.picard);
    const auto result = solver.solve(f, sc.start, sc.end - sc.start);
    convergence = picard_csv(result);
    // Output nodes: the solver nodes closest to the requested ones.
    for (int k = 0; k <= sc.time_intervals; ++k) {
      const double t = sc.start + (sc.end - sc.start) * k / sc.time_intervals;
      std::size_t best = 0;
      for (std::size_t i = 1; i < result.trajectory.times.size(); ++i) {
        if (std::abs(result.trajectory.times[i] - t) < std::abs(result.trajectory.times[best] - t)) best = i;
      }
      traj.times.push_back(result.trajectory.times[best]);
      traj.states.push_back(result.trajectory.states[best]);
    }
  } else {
    traj = evolve_along(*rt.propagator(grid), TimeGrid(sc.start, sc.end, sc.time_intervals, QuadratureRule::Trapezoid), f);
  }

  std::vector<double> l2, s2, var, edge;
  std::ostringstream csv;
  csv << "time,l2_norm,sigma2_norm,variance,boundary_mass\n" << std::setprecision(12);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto& u = traj.states[k];
    l2.push_back(u.norm());
    s2.push_back(sigma_k_norm(u, 2));
    var.push_back(spread(u));
    edge.push_back(boundary_mass(u));
    csv << traj.times[k] << "," << l2.back() << "," << s2.back() << "," << var.back() << "," << edge.back() << "\n";
  }
  write_file_atomic(out / "norms.csv", csv.str());
  write_file_atomic(out / "variance.dat", two_column("t variance", traj.times, var));
  write_file_atomic(out / "l2_norm.dat", two_column("t l2_norm", traj.times, l2));
  write_file_atomic(out / "sigma2_norm.dat", two_column("t sigma2_norm", traj.times, s2));
  if (!convergence.empty()) {
    write_file_atomic(out / "convergence.csv", convergence);
    std::vector<double> it, res;
    std::istringstream in(convergence);
    std::string row;
    std::getline(in, row);
    int n = 0;
    while (std::getline(in, row)) {
      std::vector<std::string> cols;
      std::stringstream rs(row);
      for (std::string c; std::getline(rs, c, ',');) cols.push_back(c);
      it.push_back(++n);
      res.push_back(std::stod(cols.at(4)));
    }
    write_file_atomic(out / "residuals.dat", two_column("iteration residual", it, res));
  }
  write_state_binary(out / "state_initial.bin", traj.states.front());
  write_state_binary(out / "state_final.bin", traj.states.back());
  if (sc.snapshot_every > 0) {
    for (std::size_t k = 0; k < traj.states.size(); k += static_cast<std::size_t>(sc.snapshot_every)) {
      std::ostringstream name;
      name << "state_" << std::setw(4) << std::setfill('0') << k << ".bin";
      write_state_binary(out / name.str(), traj.states[k]);
    }
  }
  if (grid->axis_count() <= 2) write_state_csv(out / "state_final.csv", traj.states.back());

  nlohmann::json summary;
  summary["scenario"] = sc.name;
  summary["grid"] = describe_grid(*grid);
  summary["seed"] = sc.seed;
  summary["interval"] = {sc.start, sc.end};
  summary["nodes"] = traj.states.size();
  summary["initial_norm"] = l2.front();
  summary["final_norm"] = l2.back();
  summary["max_boundary_mass"] = *std::max_element(edge.begin(), edge.end());
  if (traj.states.size() >= 3 && (traj.states.size() - 1) % 2 == 0) {
    const TimeGrid tg(traj.times.front(), traj.times.back(), static_cast<int>(traj.states.size() - 1));
    summary["x_norm"] = x_norm(traj, tg, cluster_exponents(sc.hamiltonian.system, sc.hamiltonian.potentials));
  }
  write_file_atomic(out / "summary.json", summary.dump(2) + "\n");
  std::cout << "wrote " << traj.states.size() << " nodes to " << out.string() << "\n";
  return kExitPass;
}

int cmd_verify(const std::vector<std::string>& configs, const std::vector<std::string>& suites,
               const std::string& out_flag, std::optional<std::uint64_t> seed, double scale) {
  const auto& known = known_suites();
  for (const auto& s : suites) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      std::cerr << "error: unknown suite '" << s << "'\n";
      return kExitUsage;
    }
  }
  if (!(scale > 0)) {
    std::cerr << "error: --tolerance-scale must be positive\n";
    return kExitUsage;
  }
  std::vector<Scenario> scenarios;
  for (const auto& c : configs) scenarios.push_back(load_scenario(c));

  SuiteContext ctx;
  ctx.tolerance_scale = scale;
  ctx.seed = seed;
  std::vector<SuiteReport> reports;
  for (const auto& sc : scenarios) {
    std::vector<std::string> selected;
    for (const auto& name : sc.suites) {
      if (suites.empty() || std::find(suites.begin(), suites.end(), name) != suites.end()) selected.push_back(name);
    }
    for (const auto& name : selected) {
      const auto t0 = std::chrono::steady_clock::now();
      reports.push_back(run_suite(name, sc, ctx));
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cout << reports_text({reports.back()}) << "  (" << std::fixed << std::setprecision(1) << secs
                << " s)\n" << std::defaultfloat;
    }
  }
  if (reports.empty()) {
    std::cerr << "error: no suite selected\n";
    return kExitUsage;
  }
  const fs::path out = !out_flag.empty() ? fs::path(out_flag)
                                         : (scenarios.size() == 1 ? fs::path(scenarios.front().output) : fs::path());
  if (!out.empty()) {
    fs::create_directories(out);
    write_file_atomic(out / "report.json", reports_json(reports, utc_timestamp()));
    write_file_atomic(out / "report.txt", reports_text(reports));
  }
  const bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass(); });
  std::cout << (pass ? "all suites passed" : "verification FAILED") << "\n";
  return pass ? kExitPass : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for N-body Schroedinger propagators"};
  app.require_subcommand(1);

  int n = 3;
  std::string p_text = "2", l_text, sigma_text, gamma_text, assumption = "V2";
  auto* exponents = app.add_subcommand("exponents", "a(p), (l, theta) and (b, q, p~) as exact rationals");
  exponents->add_option("--n", n, "relative dimension n_D")->check(CLI::PositiveNumber);
  exponents->add_option("--p", p_text, "integrability exponent (\"3/2\", \"inf\")");
  auto* admissible = exponents->add_subcommand("admissible", "test 0 <= 2/sigma = n(1/2 - 1/l) <= 1");
  admissible->add_option("--n", n)->check(CLI::PositiveNumber);
  admissible->add_option("--l", l_text)->required();
  admissible->add_option("--sigma", sigma_text)->required();

  auto* classify = app.add_subcommand("classify", "feasibility of |x|^-gamma under V-1 / V-2");
  classify->add_option("--n", n)->check(CLI::PositiveNumber);
  classify->add_option("--gamma", gamma_text)->required();
  classify->add_option("--assumption", assumption, "V1 or V2")->check(CLI::IsMember({"V1", "V2", "V-1", "V-2"}));

  std::vector<std::string> configs, suites;
  std::string out;
  std::uint64_t seed = 0;
  double scale = 1.0;
  auto* simulate = app.add_subcommand("simulate", "evolve a scenario and write data files");
  simulate->add_option("--config", configs, "scenario JSON")->required()->expected(1);
  simulate->add_option("--out", out, "output directory (default: scenario 'output')");
  auto* sim_seed = simulate->add_option("--seed", seed);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--config", configs, "scenario JSON (repeatable)")->required();
  verify->add_option("--suite", suites, "suite name (repeatable)");
  verify->add_option("--out", out, "report directory");
  auto* ver_seed = verify->add_option("--seed", seed);
  verify->add_option("--tolerance-scale", scale, "multiplies every scaled tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*exponents) {
      if (*admissible) return cmd_admissible(n, l_text, sigma_text);
      return cmd_exponents(n, p_text);
    }
    if (*classify) return cmd_classify(n, gamma_text, assumption);
    if (*simulate) {
      return cmd_simulate(configs.front(), out, *sim_seed ? std::optional<std::uint64_t>(seed) : std::nullopt);
    }
    if (*verify) {
      return cmd_verify(configs, suites, out, *ver_seed ? std::optional<std::uint64_t>(seed) : std::nullopt, scale);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Config ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
