#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gke/checks.hpp"

namespace gke {

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::string generator = "log";
  std::string weights;
  double tol = 0.0;
  int max_iter = 500;
  std::uint64_t seed = 0;
  int trials = 10;
  int dim = 4;
  int count = 3;
  std::string spectrum = "1,4";
  std::string suite = "all";
  std::string report = "json";
  bool stable = false;
};

/// Expands "all" or a comma list of check ids; unambiguous prefixes are
/// accepted.
std::vector<std::string> resolve_suite_ids(const std::string& spec);

std::string format_report(const std::vector<CheckResult>& results, const std::string& report, bool stable);

int cmd_generate(const RunConfig& cfg);
int cmd_solve(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

/// Full front end: parses argv, dispatches, maps errors to exit codes
/// (verify: 2 on failed checks, 3 on solver failure; solve: 2 on
/// non-convergence; config and input problems: 1).
int run_cli(int argc, char** argv);

}  // namespace gke
