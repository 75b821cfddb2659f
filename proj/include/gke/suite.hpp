#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gke/checks.hpp"

namespace gke {

/// How to build one trial's CheckInstance. Empty map/monotone specs select a
/// seeded per-trial rotation of defaults; identical replicates one matrix so
/// every mean coincides (equality probes).
struct InstanceRecipe {
  int dim = 4;
  int count = 3;
  double m = 1.0;
  double M = 4.0;
  std::string generator = "log";
  std::optional<double> p;
  std::string map_spec;
  std::string monotone_spec;
  bool identical = false;
};

struct SuiteItem {
  std::string check_id;
  InstanceRecipe recipe;
  int trials = 1;
};

enum class Execution { serial, parallel };

/// Deterministic in (check_id, recipe, seed, trial); adding trials never
/// changes earlier instances.
CheckInstance make_instance(const std::string& check_id, const InstanceRecipe& recipe, std::uint64_t seed,
                            int trial);

/// Runs every item's trials, optionally across threads, and returns results
/// in item-then-trial order regardless of scheduling. Errors from any trial
/// propagate after the loop finishes.
std::vector<CheckResult> run_suite(const std::vector<SuiteItem>& items, std::uint64_t seed,
                                   Execution exec = Execution::parallel, double tol = 0.0);

struct SuiteSummary {
  std::string check_id;
  int trials = 0;
  int failures = 0;
  double min_margin = 0.0;
};

std::vector<SuiteSummary> summarize(const std::vector<CheckResult>& results);

}  // namespace gke
