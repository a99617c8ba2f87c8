#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strichartz/dispersive.hpp"
#include "strichartz/duhamel.hpp"
#include "strichartz/evolver.hpp"
#include "strichartz/strichartz.hpp"

namespace strichartz {

struct GridConfig {
  std::vector<double> extents;  ///< one per axis (N*d)
  std::vector<int> points;
};

struct InitialStateConfig {
  enum class Kind { Gaussian, RandomField } kind = Kind::Gaussian;
  GaussianSpec gaussian;
  RandomFieldSpec random;
};

/// Thresholds of every check. Entries marked (scaled) are multiplied by the
/// --tolerance-scale factor; the others are structural.
struct Tolerances {
  double unitarity = 1e-8;               // (scaled)
  double ck = 1e-6;                      // (scaled)
  double gauge = 1e-6;                   // (scaled)
  double sigma2_growth = 10.0;
  double sigma2_order = 1.8;
  double sigma2_period = 1e-4;           // (scaled)
  double dispersive_slope = 0.10;        // (scaled)
  double strichartz_unit = 1e-10;        // (scaled)
  double strichartz_refinement = 0.10;   // (scaled)
  double strichartz_interacting = 3.0;
  double picard_oracle = 1e-4;           // (scaled)
  double picard_rho = 0.9;
  double picard_unitarity = 1e-6;        // (scaled)
  double identity = 1e-5;                // (scaled)
  double identity_order = 0.5;           ///< allowed |observed - rule order|
  double free_variance = 1e-6;           // (scaled)
  double free_kernel = 1e-6;             // (scaled)
  double recurrence_dense = 1e-6;        // (scaled)
  double recurrence_split = 1e-4;        // (scaled)
  double ground_energy = 1e-3;           // (scaled)
  double hos_refinement = 0.10;          // (scaled)

  Tolerances scaled(double factor) const;
};

struct UnitarityOptions {
  int random_states = 3;
};

struct CkOptions {
  /// (t, r, s) in units of the interval: x -> start + x (end - start).
  std::vector<std::array<double, 3>> triples{{1.0, 0.5, 0.0}, {0.7, 0.7, 0.7}, {0.0, 0.5, 1.0}};
};

struct GaugeOptions {
  double sigma = 2.0;
  double sigma_coefficient = 1.0;
  double sigma_time = 1.0;
  double sigma_extent = 8.0;
  std::vector<int> sigma_points{32, 64, 128};
};

struct Sigma2Options {
  std::vector<int> steps{8, 16, 32};
  std::optional<double> period;
};

struct DispersiveSuiteOptions {
  std::vector<std::vector<int>> clusters;  ///< empty: all particles
  DispersiveOptions fit;
};

struct StrichartzSuiteOptions {
  std::vector<int> cluster;  ///< empty: all particles
  std::vector<std::pair<ExponentRational, ExponentRational>> pairs;  ///< (lambda, sigma)
  std::vector<StrichartzKind> kinds{StrichartzKind::Homogeneous};
  int samples = 16;
  int time_intervals = 64;
  bool refinement = true;
  int comparison_samples = 3;  ///< interacting vs free X(I) ratio (needs potentials)
  RandomFieldSpec field;
};

struct IdentitySuiteOptions {
  std::vector<int> intervals{16, 32, 64};
  QuadratureRule rule = QuadratureRule::Simpson;
};

struct FreeOracleOptions {
  double kernel_time = 2.0;
  int variance_samples = 9;
};

struct RecurrenceOptions {
  double split_dt = 1e-3;
  double omega = 1.0;
};

struct OperatorBoundsOptions {
  int hos_points = 128;
  double hos_extent = 8.0;
  double interior_fraction = 1.0 / 3.0;
};

struct PicardOracleOptions {
  int oracle_refinement = 4;  ///< oracle steps per Picard node spacing
};

struct ClassificationOptions {
  std::vector<int> dimensions{3, 4, 6};
  /// Assumption the scenario's own potential terms are classified under.
  Assumption assumption = Assumption::V2;
  std::int64_t gamma_denominator = 100;
};

struct SuiteOptions {
  UnitarityOptions unitarity;
  CkOptions ck;
  GaugeOptions gauge;
  Sigma2Options sigma2;
  DispersiveSuiteOptions dispersive;
  StrichartzSuiteOptions strichartz;
  IdentitySuiteOptions identities;
  FreeOracleOptions free_oracle;
  RecurrenceOptions recurrence;
  OperatorBoundsOptions operator_bounds;
  PicardOracleOptions picard_oracle;
  ClassificationOptions classification;
};

enum class PropagatorChoice { Auto, Picard, Direct };

struct Scenario {
  std::string name = "scenario";
  HamiltonianSpec hamiltonian;
  std::optional<GridConfig> grid;
  double start = 0.0;
  double end = 1.0;
  BackendConfig backend;
  PropagatorChoice propagator = PropagatorChoice::Auto;
  PicardOptions picard;
  InitialStateConfig initial;
  std::optional<double> gauge_coefficient;
  std::vector<std::string> suites;
  Tolerances tolerances;
  SuiteOptions options;
  std::uint64_t seed = 1;
  std::string output = "out";
  int snapshot_every = 0;  ///< simulate: binary snapshot stride (0: endpoints only)
  int time_intervals = 64;  ///< simulate: output nodes over the interval
};

/// Parses and validates a JSON scenario. Unknown keys, wrong types and
/// inconsistent sizes raise ErrorKind::Config.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

/// Names accepted in "suites" and by --suite.
const std::vector<std::string>& known_suites();

/// Objects a suite needs, built lazily from a scenario.
class ScenarioRuntime {
 public:
  explicit ScenarioRuntime(Scenario scenario);

  const Scenario& scenario() const noexcept { return scenario_; }
  GridPtr grid() const;
  /// Same extents, points multiplied per axis.
  GridPtr refined_grid(int factor) const;
  HamiltonianSpec free_spec() const;
  std::shared_ptr<const Hamiltonian> hamiltonian(const GridPtr& grid) const;
  std::shared_ptr<const Propagator> free_propagator(const GridPtr& grid) const;
  std::shared_ptr<const Propagator> propagator(const GridPtr& grid) const;
  StateVector initial_state(const GridPtr& grid) const;
  /// Band-limited random states with seeds seed, seed + 1, ...
  std::vector<StateVector> random_states(const GridPtr& grid, int count) const;

 private:
  Scenario scenario_;
  mutable GridPtr grid_;
};

}  // namespace strichartz
