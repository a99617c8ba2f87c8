#include "doctest.h"
#include "json.hpp"
#include "strichartz/error.hpp"
#include "strichartz/report.hpp"
#include "strichartz/scenario.hpp"

using namespace strichartz;

namespace {
ErrorKind kind_of(const std::string& text) {
  try {
    (void)parse_scenario(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;  // marker for "no error"
}
}  // namespace

TEST_CASE("scenario parsing") {
  const auto s = parse_scenario(R"({
    "name": "t", "system": {"particles": 2, "dimension": 1},
    "potentials": [{"cluster": [1, 2], "gamma": 1, "epsilon": 0.25, "p": "2"}],
    "grid": {"extent": 8, "points": [32, 64]},
    "interval": {"start": 0, "end": 0.5},
    "suites": ["unitarity", "ck"], "seed": 5})");
  CHECK(s.name == "t");
  CHECK(s.hamiltonian.system.particle_count() == 2);
  REQUIRE(s.hamiltonian.potentials.size() == 1);
  CHECK(s.hamiltonian.potentials[0].p == ExponentRational(2));
  REQUIRE(s.grid);
  CHECK(s.grid->points == std::vector<int>{32, 64});
  CHECK(s.end == 0.5);
  CHECK(s.seed == 5);
  CHECK(s.suites.size() == 2);
}

TEST_CASE("schema violations are config errors") {
  CHECK(kind_of(R"({"nmae": "x"})") == ErrorKind::Config);
  CHECK(kind_of(R"({"grid": {"extent": 4, "points": 12}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"suites": ["nope"]})") == ErrorKind::Config);
  CHECK(kind_of(R"({"backend": {"kind": "magic"}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"tolerances": {"ck": -1}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"system": {"particles": 2}, "potentials": [{"cluster": [1, 3]}]})") == ErrorKind::Config);
  CHECK(kind_of("{not json") == ErrorKind::Config);
  CHECK(kind_of(R"({"name": "ok"})") == ErrorKind::InvalidArgument);
}

TEST_CASE("tolerance scaling leaves structural thresholds alone") {
  Tolerances t;
  const auto s = t.scaled(10.0);
  CHECK(s.ck == doctest::Approx(10.0 * t.ck));
  CHECK(s.sigma2_order == t.sigma2_order);
  CHECK(s.picard_rho == t.picard_rho);
}

TEST_CASE("report serialization") {
  SuiteReport r;
  r.suite = "ck";
  r.scenario = "t";
  r.seed = 3;
  r.add(at_most("residual", 1e-9, 1e-6));
  r.add(at_least("order", 1.5, 1.8));
  CHECK_FALSE(r.pass());
  const auto j = nlohmann::json::parse(reports_json({r}, "2020-01-01T00:00:00Z"));
  CHECK(j["pass"] == false);
  CHECK(j["reports"][0]["checks"][0]["pass"] == true);
  CHECK(j["reports"][0]["checks"][1]["pass"] == false);
  CHECK(reports_text({r}).find("FAIL") != std::string::npos);
  // Deterministic apart from the timestamp.
  CHECK(reports_json({r}, "a") == reports_json({r}, "a"));
}
