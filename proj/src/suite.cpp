#include "gke/suite.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <limits>
#include <unordered_map>
#include <utility>

#include "gke/errors.hpp"
#include "gke/generate.hpp"
#include "gke/linear_maps.hpp"
#include "gke/log.hpp"
#include "gke/rng.hpp"

namespace gke {
namespace {

constexpr std::uint64_t kWeightSalt = 0x77656967;
constexpr std::uint64_t kMapSalt = 0x6d6170;
constexpr std::uint64_t kVectorSalt = 0x766563;

MatrixEnsemble identical_ensemble(int k, int n, double m, double M, std::uint64_t seed) {
  const MatrixEnsemble one = generate_ensemble(k, 1, m, M, seed);
  std::vector<PositiveDefiniteMatrix> mats(static_cast<std::size_t>(n), one.matrix(0));
  Rng rng(seed, kWeightSalt);
  return MatrixEnsemble(std::move(mats), rng.simplex_weights(n), SpectrumBounds(m, M));
}

PositiveLinearMap rotation_map(int k, int trial, std::uint64_t seed) {
  using Kind = PositiveLinearMap::Kind;
  const std::uint64_t map_seed = mix_seed(seed, kMapSalt);
  switch (trial % 4) {
    case 0:
      return make_random_map(Kind::pinching, k, k, map_seed);
    case 1:
      return make_random_map(Kind::isometry_conjugation, k, std::max(1, k - 1), map_seed);
    case 2:
      return make_random_map(Kind::trace_state, k, k, map_seed);
    default:
      return make_random_map(Kind::mixture, k, k, map_seed);
  }
}

std::string rotation_monotone(bool increasing, int trial) {
  if (increasing) return trial % 2 == 0 ? "monotone:power:0.5" : "monotone:power:0.25";
  return trial % 2 == 0 ? "monotone:inv:0.5" : "monotone:shiftinv:1.0";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

CheckInstance make_instance(const std::string& check_id, const InstanceRecipe& recipe, std::uint64_t seed,
                            int trial) {
  if (!is_check_id(check_id)) throw ConfigError("unknown check id: " + check_id);
  if (trial < 0) throw ConfigError("trial index must be nonnegative, got " + std::to_string(trial));
  const CheckRequirements req = check_requirements(check_id);
  const std::uint64_t stream = mix_seed(fnv1a(check_id), static_cast<std::uint64_t>(trial));
  const std::uint64_t inst_seed = mix_seed(seed, stream);
  int count = recipe.count;
  if (req.pair) count = std::max(count, 2);
  CheckInstance inst{
      .ensemble = recipe.identical ? identical_ensemble(recipe.dim, count, recipe.m, recipe.M, inst_seed)
                                   : generate_ensemble(recipe.dim, count, recipe.m, recipe.M, inst_seed),
      .generator = Generator::parse(recipe.generator),
      .p = recipe.p,
      .map = std::nullopt,
      .monotone = std::nullopt,
      .vector = std::nullopt,
      .fingerprint = "",
      .seed = inst_seed,
      .solve_options = {},
  };
  if (req.map) {
    inst.map = recipe.map_spec.empty() ? rotation_map(inst.ensemble.dim(), trial, inst_seed)
                                       : PositiveLinearMap::parse(recipe.map_spec, inst.ensemble.dim());
  }
  if (req.monotone_increasing || req.monotone_decreasing) {
    const std::string spec =
        recipe.monotone_spec.empty() ? rotation_monotone(req.monotone_increasing, trial) : recipe.monotone_spec;
    inst.monotone = MonotoneFunction::parse(spec);
  }
  if (req.vector) {
    Rng rng(inst_seed, kVectorSalt);
    inst.vector = rng.unit_vector(inst.ensemble.dim());
  }
  std::string fp = "check=" + check_id + ":seed=" + std::to_string(seed) + ":trial=" + std::to_string(trial) +
                   ":k=" + std::to_string(inst.ensemble.dim()) + ":n=" + std::to_string(inst.ensemble.size()) +
                   ":g=" + inst.generator.name();
  if (inst.p) fp += ":p=" + fmt(*inst.p);
  if (inst.map) fp += ":map=" + inst.map->name();
  if (inst.monotone) fp += ":f=" + inst.monotone->name();
  if (recipe.identical) fp += ":identical";
  inst.fingerprint = std::move(fp);
  return inst;
}

std::vector<CheckResult> run_suite(const std::vector<SuiteItem>& items, std::uint64_t seed, Execution exec,
                                   double tol) {
  struct Task {
    const SuiteItem* item;
    int trial;
  };
  std::vector<Task> tasks;
  for (const auto& item : items) {
    if (item.trials < 0) throw ConfigError("trial count must be nonnegative for " + item.check_id);
    for (int t = 0; t < item.trials; ++t) tasks.push_back({&item, t});
  }
  std::vector<std::optional<CheckResult>> slots(tasks.size());
  std::exception_ptr error = nullptr;
  const long total = static_cast<long>(tasks.size());
  const auto evaluate = [&](long i) {
    const Task& t = tasks[static_cast<std::size_t>(i)];
    const CheckInstance inst = make_instance(t.item->check_id, t.item->recipe, seed, t.trial);
    slots[static_cast<std::size_t>(i)] = run_check(t.item->check_id, inst, tol);
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i) {
      try {
        evaluate(i);
      } catch (...) {
#pragma omp critical(gke_suite_error)
        {
          if (!error) error = std::current_exception();
        }
      }
    }
  } else {
    for (long i = 0; i < total && !error; ++i) {
      try {
        evaluate(i);
      } catch (...) {
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<CheckResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<SuiteSummary> summarize(const std::vector<CheckResult>& results) {
  std::vector<SuiteSummary> out;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& r : results) {
    const auto [it, fresh] = index.try_emplace(r.check_id, out.size());
    if (fresh) out.push_back({r.check_id, 0, 0, std::numeric_limits<double>::infinity()});
    SuiteSummary& s = out[it->second];
    ++s.trials;
    if (!r.holds) ++s.failures;
    s.min_margin = std::min(s.min_margin, r.margin);
  }
  return out;
}

}  // namespace gke
