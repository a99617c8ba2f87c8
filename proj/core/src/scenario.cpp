#include "strichartz/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "strichartz/error.hpp"

namespace strichartz {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  fail(ErrorKind::Config, where + ": " + what);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) config_error(where, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) config_error(where, "unknown key '" + key + "'");
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) config_error(where, "expected a number");
  return j.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j.at(key), where + "." + key) : fallback;
}

std::int64_t integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) config_error(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::int64_t integer_or(const json& j, const char* key, std::int64_t fallback,
                        const std::string& where) {
  return j.contains(key) ? integer(j.at(key), where + "." + key) : fallback;
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) config_error(where, "expected a string");
  return j.get<std::string>();
}

bool boolean(const json& j, const std::string& where) {
  if (!j.is_boolean()) config_error(where, "expected true or false");
  return j.get<bool>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) config_error(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> integers(const json& j, const std::string& where) {
  if (!j.is_array()) config_error(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(static_cast<int>(integer(j[i], where + "[" + std::to_string(i) + "]")));
  }
  return out;
}

Eigen::VectorXd vector_of(const json& j, const std::string& where) {
  const auto v = numbers(j, where);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ExponentRational exponent(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return ExponentRational::parse(j.get<std::string>());
    if (j.is_number_integer()) return ExponentRational(j.get<std::int64_t>());
  } catch (const Error& e) {
    config_error(where, e.what());
  }
  config_error(where, "expected an exponent as a string (\"3/2\", \"inf\") or an integer");
}

template <typename F>
auto wrap(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    config_error(where, e.what());
  }
}

ParticleSystem parse_system(const json& j) {
  const std::string w = "system";
  check_keys(j, w, {"particles", "dimension", "masses", "charges"});
  const int n = static_cast<int>(integer_or(j, "particles", 1, w));
  const int d = static_cast<int>(integer_or(j, "dimension", 1, w));
  std::vector<double> masses(static_cast<std::size_t>(std::max(n, 0)), 1.0);
  std::vector<double> charges = masses;
  if (j.contains("masses")) masses = numbers(j.at("masses"), w + ".masses");
  if (j.contains("charges")) charges = numbers(j.at("charges"), w + ".charges");
  if (static_cast<int>(masses.size()) != n || static_cast<int>(charges.size()) != n) {
    config_error(w, "masses and charges need one entry per particle");
  }
  return wrap(w, [&] { return ParticleSystem(d, masses, charges); });
}

FieldSpec parse_fields(const json& j, int d) {
  const std::string w = "fields";
  check_keys(j, w, {"phi", "A"});
  FieldSpec f(d);
  if (j.contains("phi")) {
    const auto& arr = j.at("phi");
    if (!arr.is_array()) config_error(w + ".phi", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& t = arr[i];
      const std::string wi = w + ".phi[" + std::to_string(i) + "]";
      if (!t.is_object() || !t.contains("type")) config_error(wi, "needs a 'type'");
      const std::string type = text(t.at("type"), wi + ".type");
      if (type == "radial_power") {
        check_keys(t, wi, {"type", "strength", "nu", "modulation", "frequency", "offset"});
        f.add(ScalarTerm::radial_power(number_or(t, "strength", 0.5, wi), number_or(t, "nu", 1.0, wi),
                                       number_or(t, "modulation", 0.0, wi),
                                       number_or(t, "frequency", 0.0, wi),
                                       number_or(t, "offset", 0.0, wi)));
      } else if (type == "constant_electric") {
        check_keys(t, wi, {"type", "field"});
        if (!t.contains("field")) config_error(wi, "needs 'field'");
        const Eigen::VectorXd e = vector_of(t.at("field"), wi + ".field");
        if (e.size() != d) config_error(wi, "field must have one entry per spatial dimension");
        f.add(ScalarTerm::constant_electric(e));
      } else {
        config_error(wi + ".type", "unknown scalar profile '" + type + "'");
      }
    }
  }
  if (j.contains("A")) {
    const auto& arr = j.at("A");
    if (!arr.is_array()) config_error(w + ".A", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& t = arr[i];
      const std::string wi = w + ".A[" + std::to_string(i) + "]";
      if (!t.is_object() || !t.contains("type")) config_error(wi, "needs a 'type'");
      const std::string type = text(t.at("type"), wi + ".type");
      if (type == "radial_gradient") {
        check_keys(t, wi, {"type", "coefficient", "nu"});
        f.add(VectorTerm::radial_gradient(number_or(t, "coefficient", 1.0, wi),
                                          number_or(t, "nu", 1.0, wi)));
      } else if (type == "linear") {
        check_keys(t, wi, {"type", "matrix"});
        if (!t.contains("matrix") || !t.at("matrix").is_array()) config_error(wi, "needs 'matrix'");
        const auto& rows = t.at("matrix");
        if (static_cast<int>(rows.size()) != d) config_error(wi, "matrix must be d x d");
        Eigen::MatrixXd m(d, d);
        for (int r = 0; r < d; ++r) {
          const auto row = numbers(rows[static_cast<std::size_t>(r)], wi + ".matrix");
          if (static_cast<int>(row.size()) != d) config_error(wi, "matrix must be d x d");
          for (int c = 0; c < d; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
        }
        f.add(VectorTerm::linear_potential(m));
      } else {
        config_error(wi + ".type", "unknown vector profile '" + type + "'");
      }
    }
  }
  return f;
}

std::vector<PotentialTerm> parse_potentials(const json& arr, const ParticleSystem& system) {
  const std::string w = "potentials";
  if (!arr.is_array()) config_error(w, "expected an array");
  std::vector<PotentialTerm> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& t = arr[i];
    const std::string wi = w + "[" + std::to_string(i) + "]";
    check_keys(t, wi, {"profile", "cluster", "gamma", "epsilon", "width", "strength", "p", "centers"});
    if (!t.contains("cluster")) config_error(wi, "needs 'cluster'");
    const std::vector<int> members = integers(t.at("cluster"), wi + ".cluster");
    const ClusterSpec cluster = wrap(wi + ".cluster", [&] { return system.cluster(members); });
    const int n = relative_dimension(cluster);
    const std::string profile = t.contains("profile") ? text(t.at("profile"), wi + ".profile") : "power_law";
    PotentialTerm term;
    if (profile == "power_law") {
      term = wrap(wi, [&] {
        return PotentialTerm::power_law(members, n, number_or(t, "gamma", 1.0, wi),
                                        number_or(t, "epsilon", 0.0, wi));
      });
    } else if (profile == "gaussian") {
      term = wrap(wi, [&] {
        return PotentialTerm::gaussian(members, n, 1.0, number_or(t, "width", 1.0, wi));
      });
    } else {
      config_error(wi + ".profile", "unknown profile '" + profile + "'");
    }
    if (t.contains("strength")) term.centers.front().strength = number(t.at("strength"), wi + ".strength");
    if (t.contains("p")) term.p = exponent(t.at("p"), wi + ".p");
    if (t.contains("centers")) {
      const auto& cs = t.at("centers");
      if (!cs.is_array() || cs.empty()) config_error(wi + ".centers", "expected a nonempty array");
      term.centers.clear();
      for (std::size_t c = 0; c < cs.size(); ++c) {
        const std::string wc = wi + ".centers[" + std::to_string(c) + "]";
        check_keys(cs[c], wc, {"position", "velocity", "strength"});
        PotentialCenter center{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 1.0};
        if (cs[c].contains("position")) center.position = vector_of(cs[c].at("position"), wc + ".position");
        if (cs[c].contains("velocity")) center.velocity = vector_of(cs[c].at("velocity"), wc + ".velocity");
        if (cs[c].contains("strength")) center.strength = number(cs[c].at("strength"), wc + ".strength");
        if (center.position.size() != n || center.velocity.size() != n) {
          config_error(wc, "positions and velocities live in the relative space of dimension " +
                               std::to_string(n));
        }
        term.centers.push_back(center);
      }
    }
    out.push_back(term);
  }
  return out;
}

GridConfig parse_grid(const json& j, int axes) {
  const std::string w = "grid";
  check_keys(j, w, {"extent", "points"});
  if (!j.contains("extent") || !j.contains("points")) config_error(w, "needs 'extent' and 'points'");
  GridConfig g;
  const auto& e = j.at("extent");
  const auto& p = j.at("points");
  g.extents = e.is_array() ? numbers(e, w + ".extent") : std::vector<double>(axes, number(e, w + ".extent"));
  g.points = p.is_array() ? integers(p, w + ".points")
                          : std::vector<int>(axes, static_cast<int>(integer(p, w + ".points")));
  if (static_cast<int>(g.extents.size()) != axes || static_cast<int>(g.points.size()) != axes) {
    config_error(w, "extent and points need one entry per axis (" + std::to_string(axes) + ")");
  }
  for (std::size_t a = 0; a < g.points.size(); ++a) {
    const int m = g.points[a];
    if (m < 8 || (m & (m - 1)) != 0) config_error(w + ".points", "points per axis must be a power of two >= 8");
    if (!(g.extents[a] > 0)) config_error(w + ".extent", "extents must be positive");
  }
  return g;
}

BackendConfig parse_backend_config(const json& j) {
  const std::string w = "backend";
  check_keys(j, w, {"kind", "dt", "magnus_order", "dense_cap", "krylov_dimension", "krylov_tolerance",
                    "drift_tolerance"});
  BackendConfig b;
  if (j.contains("kind")) b.kind = wrap(w + ".kind", [&] { return parse_backend(text(j.at("kind"), w + ".kind")); });
  b.dt = number_or(j, "dt", b.dt, w);
  b.magnus_order = static_cast<int>(integer_or(j, "magnus_order", b.magnus_order, w));
  b.dense_cap = integer_or(j, "dense_cap", b.dense_cap, w);
  b.krylov.max_dimension = static_cast<int>(integer_or(j, "krylov_dimension", b.krylov.max_dimension, w));
  b.krylov.tolerance = number_or(j, "krylov_tolerance", b.krylov.tolerance, w);
  b.drift_tolerance = number_or(j, "drift_tolerance", b.drift_tolerance, w);
  if (!(b.dt > 0)) config_error(w + ".dt", "must be positive");
  if (b.magnus_order != 1 && b.magnus_order != 2 && b.magnus_order != 4) {
    config_error(w + ".magnus_order", "must be 1, 2 or 4");
  }
  return b;
}

PicardOptions parse_picard(const json& j) {
  const std::string w = "picard";
  check_keys(j, w, {"rule", "nodes_per_unit", "min_intervals", "tolerance", "max_iterations",
                    "contraction_threshold", "min_interval"});
  PicardOptions p;
  if (j.contains("rule")) p.rule = wrap(w + ".rule", [&] { return parse_rule(text(j.at("rule"), w + ".rule")); });
  p.nodes_per_unit = number_or(j, "nodes_per_unit", p.nodes_per_unit, w);
  p.min_intervals = static_cast<int>(integer_or(j, "min_intervals", p.min_intervals, w));
  p.tolerance = number_or(j, "tolerance", p.tolerance, w);
  p.max_iterations = static_cast<int>(integer_or(j, "max_iterations", p.max_iterations, w));
  p.contraction_threshold = number_or(j, "contraction_threshold", p.contraction_threshold, w);
  p.min_interval = number_or(j, "min_interval", p.min_interval, w);
  return p;
}

RandomFieldSpec parse_random_field(const json& j, const std::string& w, RandomFieldSpec r) {
  r.envelope_width = number_or(j, "envelope_width", r.envelope_width, w);
  r.mode_spacing = number_or(j, "mode_spacing", r.mode_spacing, w);
  r.max_mode = static_cast<int>(integer_or(j, "max_mode", r.max_mode, w));
  r.decay = number_or(j, "decay", r.decay, w);
  return r;
}

InitialStateConfig parse_initial(const json& j, int axes) {
  const std::string w = "initial_state";
  InitialStateConfig c;
  const std::string type = j.contains("type") ? text(j.at("type"), w + ".type") : "gaussian";
  if (type == "gaussian") {
    check_keys(j, w, {"type", "center", "width", "momentum"});
    c.kind = InitialStateConfig::Kind::Gaussian;
    auto per_axis = [&](const char* key, double fill) {
      if (!j.contains(key)) return Eigen::VectorXd(Eigen::VectorXd::Constant(axes, fill));
      const auto& v = j.at(key);
      if (v.is_number()) return Eigen::VectorXd(Eigen::VectorXd::Constant(axes, number(v, w + "." + key)));
      Eigen::VectorXd out = vector_of(v, w + "." + key);
      if (out.size() != axes) config_error(w + "." + key, "needs one entry per axis");
      return out;
    };
    c.gaussian.center = per_axis("center", 0.0);
    c.gaussian.width = per_axis("width", 1.0);
    c.gaussian.momentum = per_axis("momentum", 0.0);
    if ((c.gaussian.width.array() <= 0).any()) config_error(w + ".width", "widths must be positive");
  } else if (type == "random_field") {
    check_keys(j, w, {"type", "envelope_width", "mode_spacing", "max_mode", "decay"});
    c.kind = InitialStateConfig::Kind::RandomField;
    c.random = parse_random_field(j, w, c.random);
  } else {
    config_error(w + ".type", "unknown initial state '" + type + "'");
  }
  return c;
}

Tolerances parse_tolerances(const json& j) {
  const std::string w = "tolerances";
  Tolerances t;
  std::vector<std::pair<const char*, double*>> slots{
      {"unitarity", &t.unitarity},
      {"ck", &t.ck},
      {"gauge", &t.gauge},
      {"sigma2_growth", &t.sigma2_growth},
      {"sigma2_order", &t.sigma2_order},
      {"sigma2_period", &t.sigma2_period},
      {"dispersive_slope", &t.dispersive_slope},
      {"strichartz_unit", &t.strichartz_unit},
      {"strichartz_refinement", &t.strichartz_refinement},
      {"strichartz_interacting", &t.strichartz_interacting},
      {"picard_oracle", &t.picard_oracle},
      {"picard_rho", &t.picard_rho},
      {"picard_unitarity", &t.picard_unitarity},
      {"identity", &t.identity},
      {"identity_order", &t.identity_order},
      {"free_variance", &t.free_variance},
      {"free_kernel", &t.free_kernel},
      {"recurrence_dense", &t.recurrence_dense},
      {"recurrence_split", &t.recurrence_split},
      {"ground_energy", &t.ground_energy},
      {"hos_refinement", &t.hos_refinement},
  };
  if (!j.is_object()) config_error(w, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (auto& [name, slot] : slots) {
      if (key == name) {
        *slot = number(value, w + "." + key);
        if (!(*slot > 0)) config_error(w + "." + key, "tolerances must be positive");
        found = true;
      }
    }
    if (!found) config_error(w, "unknown key '" + key + "'");
  }
  return t;
}

std::vector<std::vector<int>> integer_lists(const json& j, const std::string& w) {
  if (!j.is_array()) config_error(w, "expected an array of arrays");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integers(j[i], w + "[" + std::to_string(i) + "]"));
  return out;
}

SuiteOptions parse_suite_options(const json& j) {
  const std::string w = "suite_options";
  check_keys(j, w, {"unitarity", "ck", "gauge", "sigma2", "dispersive", "strichartz", "identities",
                    "free_oracle", "recurrence", "operator_bounds", "picard_oracle", "classification"});
  SuiteOptions o;
  if (j.contains("unitarity")) {
    const auto& s = j.at("unitarity");
    const std::string ws = w + ".unitarity";
    check_keys(s, ws, {"random_states"});
    o.unitarity.random_states = static_cast<int>(integer_or(s, "random_states", o.unitarity.random_states, ws));
  }
  if (j.contains("ck")) {
    const auto& s = j.at("ck");
    const std::string ws = w + ".ck";
    check_keys(s, ws, {"triples"});
    if (s.contains("triples")) {
      o.ck.triples.clear();
      const auto& arr = s.at("triples");
      if (!arr.is_array()) config_error(ws + ".triples", "expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto v = numbers(arr[i], ws + ".triples");
        if (v.size() != 3) config_error(ws + ".triples", "each triple is [t, r, s]");
        o.ck.triples.push_back({v[0], v[1], v[2]});
      }
    }
  }
  if (j.contains("gauge")) {
    const auto& s = j.at("gauge");
    const std::string ws = w + ".gauge";
    check_keys(s, ws, {"sigma", "sigma_coefficient", "sigma_time", "sigma_extent", "sigma_points"});
    o.gauge.sigma = number_or(s, "sigma", o.gauge.sigma, ws);
    o.gauge.sigma_coefficient = number_or(s, "sigma_coefficient", o.gauge.sigma_coefficient, ws);
    o.gauge.sigma_time = number_or(s, "sigma_time", o.gauge.sigma_time, ws);
    o.gauge.sigma_extent = number_or(s, "sigma_extent", o.gauge.sigma_extent, ws);
    if (s.contains("sigma_points")) o.gauge.sigma_points = integers(s.at("sigma_points"), ws + ".sigma_points");
  }
  if (j.contains("sigma2")) {
    const auto& s = j.at("sigma2");
    const std::string ws = w + ".sigma2";
    check_keys(s, ws, {"steps", "period"});
    if (s.contains("steps")) o.sigma2.steps = integers(s.at("steps"), ws + ".steps");
    if (s.contains("period")) o.sigma2.period = number(s.at("period"), ws + ".period");
    if (o.sigma2.steps.size() < 2) config_error(ws + ".steps", "needs at least two step counts");
  }
  if (j.contains("dispersive")) {
    const auto& s = j.at("dispersive");
    const std::string ws = w + ".dispersive";
    check_keys(s, ws, {"clusters", "window_start", "window_end", "samples", "boundary_band",
                       "boundary_tolerance"});
    if (s.contains("clusters")) o.dispersive.clusters = integer_lists(s.at("clusters"), ws + ".clusters");
    auto& f = o.dispersive.fit;
    f.window_start = number_or(s, "window_start", f.window_start, ws);
    f.window_end = number_or(s, "window_end", f.window_end, ws);
    f.samples = static_cast<int>(integer_or(s, "samples", f.samples, ws));
    f.boundary_band = number_or(s, "boundary_band", f.boundary_band, ws);
    f.boundary_tolerance = number_or(s, "boundary_tolerance", f.boundary_tolerance, ws);
  }
  if (j.contains("strichartz")) {
    const auto& s = j.at("strichartz");
    const std::string ws = w + ".strichartz";
    check_keys(s, ws, {"cluster", "pairs", "kinds", "samples", "time_intervals", "refinement",
                       "comparison_samples", "envelope_width", "mode_spacing", "max_mode", "decay"});
    auto& st = o.strichartz;
    if (s.contains("cluster")) st.cluster = integers(s.at("cluster"), ws + ".cluster");
    if (s.contains("pairs")) {
      const auto& arr = s.at("pairs");
      if (!arr.is_array()) config_error(ws + ".pairs", "expected an array of [lambda, sigma]");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_array() || arr[i].size() != 2) config_error(ws + ".pairs", "each pair is [lambda, sigma]");
        st.pairs.emplace_back(exponent(arr[i][0], ws + ".pairs"), exponent(arr[i][1], ws + ".pairs"));
      }
    }
    if (s.contains("kinds")) {
      st.kinds.clear();
      const auto& arr = s.at("kinds");
      if (!arr.is_array()) config_error(ws + ".kinds", "expected an array");
      for (const auto& k : arr) {
        st.kinds.push_back(wrap(ws + ".kinds", [&] { return parse_strichartz_kind(text(k, ws + ".kinds")); }));
      }
    }
    st.samples = static_cast<int>(integer_or(s, "samples", st.samples, ws));
    st.time_intervals = static_cast<int>(integer_or(s, "time_intervals", st.time_intervals, ws));
    if (s.contains("refinement")) st.refinement = boolean(s.at("refinement"), ws + ".refinement");
    st.comparison_samples = static_cast<int>(integer_or(s, "comparison_samples", st.comparison_samples, ws));
    st.field = parse_random_field(s, ws, st.field);
  }
  if (j.contains("identities")) {
    const auto& s = j.at("identities");
    const std::string ws = w + ".identities";
    check_keys(s, ws, {"intervals", "rule"});
    if (s.contains("intervals")) o.identities.intervals = integers(s.at("intervals"), ws + ".intervals");
    if (s.contains("rule")) o.identities.rule = wrap(ws + ".rule", [&] { return parse_rule(text(s.at("rule"), ws + ".rule")); });
  }
  if (j.contains("free_oracle")) {
    const auto& s = j.at("free_oracle");
    const std::string ws = w + ".free_oracle";
    check_keys(s, ws, {"kernel_time", "variance_samples"});
    o.free_oracle.kernel_time = number_or(s, "kernel_time", o.free_oracle.kernel_time, ws);
    o.free_oracle.variance_samples =
        static_cast<int>(integer_or(s, "variance_samples", o.free_oracle.variance_samples, ws));
  }
  if (j.contains("recurrence")) {
    const auto& s = j.at("recurrence");
    const std::string ws = w + ".recurrence";
    check_keys(s, ws, {"split_dt", "omega"});
    o.recurrence.split_dt = number_or(s, "split_dt", o.recurrence.split_dt, ws);
    o.recurrence.omega = number_or(s, "omega", o.recurrence.omega, ws);
  }
  if (j.contains("operator_bounds")) {
    const auto& s = j.at("operator_bounds");
    const std::string ws = w + ".operator_bounds";
    check_keys(s, ws, {"hos_points", "hos_extent", "interior_fraction"});
    auto& ob = o.operator_bounds;
    ob.hos_points = static_cast<int>(integer_or(s, "hos_points", ob.hos_points, ws));
    ob.hos_extent = number_or(s, "hos_extent", ob.hos_extent, ws);
    ob.interior_fraction = number_or(s, "interior_fraction", ob.interior_fraction, ws);
  }
  if (j.contains("picard_oracle")) {
    const auto& s = j.at("picard_oracle");
    const std::string ws = w + ".picard_oracle";
    check_keys(s, ws, {"oracle_refinement"});
    o.picard_oracle.oracle_refinement =
        static_cast<int>(integer_or(s, "oracle_refinement", o.picard_oracle.oracle_refinement, ws));
  }
  if (j.contains("classification")) {
    const auto& s = j.at("classification");
    const std::string ws = w + ".classification";
    check_keys(s, ws, {"dimensions", "gamma_denominator", "assumption"});
    if (s.contains("assumption")) {
      o.classification.assumption = wrap(ws + ".assumption", [&] {
        return parse_assumption(text(s.at("assumption"), ws + ".assumption"));
      });
    }
    if (s.contains("dimensions")) o.classification.dimensions = integers(s.at("dimensions"), ws + ".dimensions");
    o.classification.gamma_denominator =
        integer_or(s, "gamma_denominator", o.classification.gamma_denominator, ws);
  }
  return o;
}

}  // namespace

Tolerances Tolerances::scaled(double f) const {
  Tolerances t = *this;
  for (double* v : {&t.unitarity, &t.ck, &t.gauge, &t.sigma2_period, &t.dispersive_slope,
                    &t.strichartz_unit, &t.strichartz_refinement, &t.picard_oracle,
                    &t.picard_unitarity, &t.identity, &t.free_variance, &t.free_kernel,
                    &t.recurrence_dense, &t.recurrence_split, &t.ground_energy, &t.hos_refinement}) {
    *v *= f;
  }
  return t;
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{
      "exponents",  "classification", "free_oracle", "recurrence",    "operator_bounds",
      "dispersive", "strichartz",     "unitarity",   "ck",            "picard_oracle",
      "gauge",      "sigma2",         "identities"};
  return names;
}

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Config, std::string("scenario is not valid JSON: ") + e.what());
  }
  check_keys(j, "scenario",
             {"name", "system", "fields", "potentials", "grid", "interval", "backend", "propagator",
              "picard", "initial_state", "gauge", "suites", "tolerances", "suite_options", "seed",
              "output", "simulate", "test_mode"});
  Scenario s;
  if (j.contains("name")) s.name = text(j.at("name"), "name");
  if (j.contains("system")) s.hamiltonian.system = parse_system(j.at("system"));
  const ParticleSystem& sys = s.hamiltonian.system;
  const int axes = sys.configuration_dimension();
  s.hamiltonian.fields = j.contains("fields") ? parse_fields(j.at("fields"), sys.dimension())
                                              : FieldSpec(sys.dimension());
  if (j.contains("potentials")) s.hamiltonian.potentials = parse_potentials(j.at("potentials"), sys);
  if (j.contains("grid")) s.grid = parse_grid(j.at("grid"), axes);
  if (j.contains("interval")) {
    const auto& iv = j.at("interval");
    check_keys(iv, "interval", {"start", "end"});
    s.start = number_or(iv, "start", s.start, "interval");
    s.end = number_or(iv, "end", s.end, "interval");
  }
  if (j.contains("backend")) s.backend = parse_backend_config(j.at("backend"));
  if (j.contains("propagator")) {
    const std::string p = text(j.at("propagator"), "propagator");
    if (p == "auto") s.propagator = PropagatorChoice::Auto;
    else if (p == "picard") s.propagator = PropagatorChoice::Picard;
    else if (p == "direct") s.propagator = PropagatorChoice::Direct;
    else config_error("propagator", "expected auto, picard or direct");
  }
  if (j.contains("picard")) s.picard = parse_picard(j.at("picard"));
  if (j.contains("initial_state")) s.initial = parse_initial(j.at("initial_state"), axes);
  else s.initial = parse_initial(json::object(), axes);
  if (j.contains("gauge")) {
    check_keys(j.at("gauge"), "gauge", {"coefficient"});
    if (!j.at("gauge").contains("coefficient")) config_error("gauge", "needs 'coefficient'");
    s.gauge_coefficient = number(j.at("gauge").at("coefficient"), "gauge.coefficient");
  }
  if (j.contains("suites")) {
    const auto& arr = j.at("suites");
    if (!arr.is_array()) config_error("suites", "expected an array of names");
    for (const auto& n : arr) {
      const std::string name = text(n, "suites");
      const auto& known = known_suites();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        config_error("suites", "unknown suite '" + name + "'");
      }
      s.suites.push_back(name);
    }
  }
  if (j.contains("tolerances")) s.tolerances = parse_tolerances(j.at("tolerances"));
  if (j.contains("suite_options")) s.options = parse_suite_options(j.at("suite_options"));
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_unsigned()) config_error("seed", "expected a nonnegative integer");
    s.seed = v.get<std::uint64_t>();
  }
  if (j.contains("output")) s.output = text(j.at("output"), "output");
  if (j.contains("simulate")) {
    const auto& sim = j.at("simulate");
    check_keys(sim, "simulate", {"time_intervals", "snapshot_every"});
    s.time_intervals = static_cast<int>(integer_or(sim, "time_intervals", s.time_intervals, "simulate"));
    s.snapshot_every = static_cast<int>(integer_or(sim, "snapshot_every", s.snapshot_every, "simulate"));
    if (s.time_intervals < 1) config_error("simulate.time_intervals", "must be positive");
  }
  if (j.contains("test_mode")) {
    const auto& tm = j.at("test_mode");
    check_keys(tm, "test_mode", {"anti_hermitian_defect"});
    s.hamiltonian.anti_hermitian_defect = number_or(tm, "anti_hermitian_defect", 0.0, "test_mode");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Config, "cannot read scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

ScenarioRuntime::ScenarioRuntime(Scenario scenario) : scenario_(std::move(scenario)) {}

GridPtr ScenarioRuntime::grid() const {
  if (!grid_) {
    require(scenario_.grid.has_value(), ErrorKind::Config,
            "scenario '" + scenario_.name + "' has no grid section");
    const auto& sys = scenario_.hamiltonian.system;
    grid_ = std::make_shared<const TensorGrid>(sys.particle_count(), sys.dimension(),
                                               scenario_.grid->extents, scenario_.grid->points);
  }
  return grid_;
}

GridPtr ScenarioRuntime::refined_grid(int factor) const {
  const GridPtr g = grid();
  std::vector<double> extents;
  std::vector<int> points;
  for (const auto& ax : g->axes()) {
    extents.push_back(ax.extent);
    points.push_back(ax.points * factor);
  }
  return std::make_shared<const TensorGrid>(g->particle_count(), g->dimension(), extents, points);
}

HamiltonianSpec ScenarioRuntime::free_spec() const {
  HamiltonianSpec spec = scenario_.hamiltonian;
  spec.potentials.clear();
  return spec;
}

std::shared_ptr<const Hamiltonian> ScenarioRuntime::hamiltonian(const GridPtr& grid) const {
  return std::make_shared<const Hamiltonian>(scenario_.hamiltonian, grid);
}

std::shared_ptr<const Propagator> ScenarioRuntime::free_propagator(const GridPtr& grid) const {
  return std::make_shared<const TensorPropagator>(free_spec(), grid, scenario_.backend);
}

std::shared_ptr<const Propagator> ScenarioRuntime::propagator(const GridPtr& grid) const {
  const bool interacting = !scenario_.hamiltonian.potentials.empty();
  PropagatorChoice choice = scenario_.propagator;
  if (choice == PropagatorChoice::Auto) choice = interacting ? PropagatorChoice::Picard : PropagatorChoice::Direct;
  if (!interacting) {
    return std::make_shared<const TensorPropagator>(scenario_.hamiltonian, grid, scenario_.backend);
  }
  if (choice == PropagatorChoice::Direct) {
    auto evolver = std::make_shared<const Evolver>(hamiltonian(grid), scenario_.backend);
    return std::make_shared<const EvolverPropagator>(evolver);
  }
  auto solver = std::make_shared<const PicardSolver>(free_propagator(grid), hamiltonian(grid),
                                                     scenario_.picard);
  return std::make_shared<const PropagatorTable>(solver);
}

StateVector ScenarioRuntime::initial_state(const GridPtr& grid) const {
  if (scenario_.initial.kind == InitialStateConfig::Kind::Gaussian) {
    return gaussian_state(grid, scenario_.initial.gaussian);
  }
  return random_field_state(grid, scenario_.initial.random, scenario_.seed);
}

std::vector<StateVector> ScenarioRuntime::random_states(const GridPtr& grid, int count) const {
  std::vector<StateVector> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(random_field_state(grid, scenario_.initial.random,
                                     scenario_.seed + static_cast<std::uint64_t>(i)));
  }
  return out;
}

}  // namespace strichartz
