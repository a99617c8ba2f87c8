#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "strichartz/report.hpp"
#include "strichartz/scenario.hpp"

namespace strichartz {

struct SuiteContext {
  double tolerance_scale = 1.0;
  std::optional<std::uint64_t> seed;  ///< overrides the scenario seed
};

/// Runs one suite by name. Library failures inside the suite are recorded in
/// the report (which then fails); configuration errors propagate.
SuiteReport run_suite(const std::string& name, const Scenario& scenario,
                      const SuiteContext& context = {});

SuiteReport exponents_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport classification_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport free_oracle_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport recurrence_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport operator_bounds_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport dispersive_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport strichartz_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport unitarity_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport ck_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport picard_oracle_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport gauge_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport sigma2_suite(const ScenarioRuntime& rt, const Tolerances& tol);
SuiteReport identities_suite(const ScenarioRuntime& rt, const Tolerances& tol);

/// "64x64 on [-8,8]x[-8,8]"
std::string describe_grid(const TensorGrid& grid);

}  // namespace strichartz
