// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include "tiltrotor/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>

int main(int argc, char** argv) {
  CLI::App app{"tilt-rotor acceptance criteria"};
  int only = 0;
  std::string json_path;
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, tiltrotor::kCriterionCount));
  app.add_option("--json", json_path, "also write the machine-readable report here");
  CLI11_PARSE(app, argc, argv);

  std::vector<int> ids;
  if (only > 0) {
    ids = {only};
  } else {
    ids.resize(tiltrotor::kCriterionCount);
    std::iota(ids.begin(), ids.end(), 1);
  }
  const auto results = tiltrotor::run_criteria(ids);
  std::cout << tiltrotor::format_table(results);
  if (!json_path.empty()) std::ofstream(json_path) << tiltrotor::format_json(results);
  return tiltrotor::all_pass(results) ? 0 : 1;
}
