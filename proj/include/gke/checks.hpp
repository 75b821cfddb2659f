#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gke/ensemble.hpp"
#include "gke/generators.hpp"
#include "gke/linear_maps.hpp"
#include "gke/solvers.hpp"

namespace gke {

struct CheckResult {
  std::string check_id;
  bool holds;
  double margin;  // least eigenvalue of rhs - lhs (or scalar gap) of the tightest part
  std::string left_label;
  std::string right_label;
  std::string instance_fingerprint;
  std::uint64_t seed = 0;
  int dim = 0;
  int count = 0;
  std::string generator_name;
  std::optional<double> p;
  double elapsed_seconds = 0.0;
};

/// One concrete evaluation target. Which optional pieces a check needs is
/// reported by check_requirements; missing pieces raise ConfigError.
struct CheckInstance {
  MatrixEnsemble ensemble;
  Generator generator;
  std::optional<double> p;
  std::optional<PositiveLinearMap> map;
  std::optional<MonotoneFunction> monotone;
  std::optional<CVector> vector;
  std::string fingerprint;
  std::uint64_t seed = 0;
  SolveOptions solve_options;
};

struct CheckRequirements {
  bool bounds = false;
  bool map = false;
  bool monotone_increasing = false;
  bool monotone_decreasing = false;
  bool vector = false;
  bool pair = false;  // needs at least two members
};

const std::vector<std::string>& all_check_ids();
bool is_check_id(const std::string& id);
CheckRequirements check_requirements(const std::string& id);

/// Evaluates one inequality check. tol <= 0 selects the scale-relative
/// default tolerance per comparison; a positive tol is used as an absolute
/// margin allowance. Multi-part checks (chains, parameter grids) report the
/// minimum margin and hold only when every part holds. Non-convergent solves
/// raise SolverError tagged with the instance fingerprint.
CheckResult run_check(const std::string& check_id, const CheckInstance& inst, double tol = 0.0);

}  // namespace gke
