#include "strichartz/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace strichartz {

namespace {

const char* symbol(Comparison c) {
  switch (c) {
    case Comparison::AtMost: return "<=";
    case Comparison::AtLeast: return ">=";
    case Comparison::Flag: return "==";
  }
  return "?";
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// JSON has no inf/nan; keep them readable as strings.
nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

CheckResult at_most(std::string name, double value, double threshold, std::string note) {
  return {std::move(name), value, threshold, Comparison::AtMost, value <= threshold, std::move(note)};
}

CheckResult at_least(std::string name, double value, double threshold, std::string note) {
  return {std::move(name), value, threshold, Comparison::AtLeast, value >= threshold, std::move(note)};
}

CheckResult flag(std::string name, bool pass, std::string note) {
  return {std::move(name), pass ? 1.0 : 0.0, 1.0, Comparison::Flag, pass, std::move(note)};
}

bool SuiteReport::pass() const {
  return error.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::string reports_json(const std::vector<SuiteReport>& reports, const std::string& timestamp) {
  nlohmann::json out;
  out["timestamp"] = timestamp;
  out["pass"] = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass(); });
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["scenario"] = r.scenario;
    j["pass"] = r.pass();
    j["environment"] = {{"grid", r.grid}, {"steps", r.steps}, {"seed", r.seed}};
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
      nlohmann::json cj{{"name", c.name},
                        {"value", json_number(c.value)},
                        {"threshold", json_number(c.threshold)},
                        {"comparison", symbol(c.comparison)},
                        {"pass", c.pass}};
      if (!c.note.empty()) cj["note"] = c.note;
      checks.push_back(cj);
    }
    j["checks"] = checks;
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (!r.error.empty()) j["error"] = r.error;
    list.push_back(j);
  }
  out["reports"] = list;
  return out.dump(2) + "\n";
}

std::string reports_text(const std::vector<SuiteReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << "[" << (r.pass() ? "PASS" : "FAIL") << "] " << r.suite << " (" << r.scenario << ")";
    if (!r.grid.empty()) os << "  grid " << r.grid;
    os << "  seed " << r.seed << "\n";
    std::size_t width = 0;
    for (const auto& c : r.checks) width = std::max(width, c.name.size());
    for (const auto& c : r.checks) {
      os << "  " << (c.pass ? "ok  " : "FAIL") << "  " << c.name
         << std::string(width - c.name.size() + 2, ' ');
      if (c.comparison == Comparison::Flag) {
        os << (c.pass ? "true" : "false");
      } else {
        os << number(c.value) << " " << symbol(c.comparison) << " " << number(c.threshold);
      }
      if (!c.note.empty()) os << "  (" << c.note << ")";
      os << "\n";
    }
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
    if (!r.error.empty()) os << "  error: " << r.error << "\n";
  }
  return os.str();
}

}  // namespace strichartz
