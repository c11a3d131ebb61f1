// Acceptance checks shared by the `verify` subcommand and the acceptance
// binary. Each criterion is a list of named checks with a measured value and
// the bound it is held to.
#pragma once

#include <string>
#include <vector>

namespace tiltrotor {

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  std::string bound;  // human-readable bound, e.g. "<= 1e-10"
  std::string note;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  std::string error;  // set when the criterion threw before finishing

  bool pass() const;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id);

// sizing, rotor, observer, control, scenario, all
std::vector<std::string> suite_names();
std::vector<int> suite_criteria(const std::string& suite);  // throws ConfigError for unknown names

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids);

bool all_pass(const std::vector<CriterionResult>& results);

// One PASS/FAIL line per criterion followed by its checks.
std::string format_table(const std::vector<CriterionResult>& results);

// Machine-readable report (JSON).
std::string format_json(const std::vector<CriterionResult>& results);

}  // namespace tiltrotor
