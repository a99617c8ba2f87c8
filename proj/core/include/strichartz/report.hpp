#pragma once

#include <string>
#include <vector>

namespace strichartz {

enum class Comparison { AtMost, AtLeast, Flag };

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::AtMost;
  bool pass = false;
  std::string note;
};

/// value <= threshold
CheckResult at_most(std::string name, double value, double threshold, std::string note = {});
/// value >= threshold
CheckResult at_least(std::string name, double value, double threshold, std::string note = {});
/// A yes/no outcome; value is 1 or 0.
CheckResult flag(std::string name, bool pass, std::string note = {});

struct SuiteReport {
  std::string suite;
  std::string scenario;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  std::string grid;  ///< e.g. "64x64 on [-8,8]^2"
  long steps = 0;
  unsigned long long seed = 0;
  std::string error;  ///< set when the suite aborted

  bool pass() const;
  void add(CheckResult c) { checks.push_back(std::move(c)); }
};

/// Machine-readable reports; the only nondeterministic field is "timestamp".
std::string reports_json(const std::vector<SuiteReport>& reports, const std::string& timestamp);
/// Aligned human-readable table.
std::string reports_text(const std::vector<SuiteReport>& reports);

}  // namespace strichartz
