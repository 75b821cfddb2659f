// Times the verification suite in serial and parallel execution over the
// same work list and confirms the two runs produce identical margins.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "gke/suite.hpp"

using namespace gke;

namespace {

double time_run(const std::vector<SuiteItem>& items, std::uint64_t seed, Execution exec,
                std::vector<CheckResult>& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = run_suite(items, seed, exec);
  return std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int trials = 12;
  if (argc > 1) trials = std::max(1, std::atoi(argv[1]));

  std::vector<SuiteItem> items;
  InstanceRecipe recipe;
  recipe.dim = 5;
  recipe.count = 4;
  recipe.M = 8.0;
  for (const auto& id : all_check_ids()) items.push_back({id, recipe, trials});

  std::vector<CheckResult> serial, parallel;
  const double warm = time_run({{"eq6_sandwich", recipe, 2}}, 1, Execution::parallel, parallel);
  (void)warm;

  const double ts = time_run(items, 99, Execution::serial, serial);
  const double tp = time_run(items, 99, Execution::parallel, parallel);

  long mismatches = 0;
  for (std::size_t i = 0; i < serial.size(); ++i) {
    if (serial[i].margin != parallel[i].margin || serial[i].holds != parallel[i].holds) ++mismatches;
  }

  std::printf("checks: %zu evaluations per mode (%d trials x %zu ids)\n", serial.size(), trials,
              all_check_ids().size());
  std::printf("serial:   %8.3f s\n", ts);
  std::printf("parallel: %8.3f s\n", tp);
  std::printf("speedup:  %8.2fx\n", ts / tp);
  std::printf("result agreement: %s\n", mismatches == 0 ? "identical" : "MISMATCH");
  return mismatches == 0 ? 0 : 1;
}
