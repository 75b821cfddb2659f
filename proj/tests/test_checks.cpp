#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "gke/checks.hpp"
#include "gke/generate.hpp"
#include "gke/rng.hpp"
#include "gke/suite.hpp"

using namespace gke;

namespace {

CheckInstance basic_instance(const MatrixEnsemble& e, Generator g = Generator::make_log()) {
  return CheckInstance{.ensemble = e, .generator = std::move(g)};
}

MatrixEnsemble scaled_ensemble(const MatrixEnsemble& e, double c) {
  std::vector<PositiveDefiniteMatrix> mats;
  for (const auto& a : e.matrices()) mats.push_back(pd_scale(a, c));
  std::optional<SpectrumBounds> b;
  if (e.bounds()) b.emplace(c * e.bounds()->m, c * e.bounds()->M);
  return MatrixEnsemble(std::move(mats), e.weights(), b);
}

}  // namespace

TEST_CASE("check id registry") {
  const auto& ids = all_check_ids();
  CHECK(ids.size() == 20);
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
  for (const auto& id : ids) {
    CHECK(is_check_id(id));
    CHECK_NOTHROW(check_requirements(id));
  }
  CHECK_FALSE(is_check_id("sandwich"));
  CHECK_THROWS_AS(check_requirements("sandwich"), ConfigError);
  const MatrixEnsemble e = generate_ensemble(2, 2, 1.0, 2.0, 0);
  CHECK_THROWS_AS(run_check("sandwich", basic_instance(e)), ConfigError);
}

TEST_CASE("sandwich holds and reports a usable result") {
  const MatrixEnsemble e = generate_ensemble(4, 3, 1.0, 4.0, 5);
  CheckInstance inst = basic_instance(e);
  inst.fingerprint = "unit:sandwich";
  const CheckResult r = run_check("eq6_sandwich", inst);
  CHECK(r.holds);
  CHECK(r.check_id == "eq6_sandwich");
  CHECK(r.instance_fingerprint == "unit:sandwich");
  CHECK(r.dim == 4);
  CHECK(r.count == 3);
  CHECK(r.generator_name == "log");
  CHECK(r.elapsed_seconds > 0.0);
  CHECK_FALSE(r.left_label.empty());
  CHECK_FALSE(r.right_label.empty());

  // both ends pinch to equality when every member is the same matrix
  const PositiveDefiniteMatrix one = e.matrix(0);
  const MatrixEnsemble same({one, one, one}, e.weights());
  const CheckResult req = run_check("eq6_sandwich", basic_instance(same));
  CHECK(req.holds);
  CHECK(std::abs(req.margin) <= 1e-8);
}

TEST_CASE("reverse arithmetic bound margin is reproducible") {
  const MatrixEnsemble e = generate_ensemble(4, 3, 1.0, 4.0, 42);
  const CheckResult r = run_check("prop22_reverse_am", basic_instance(e));
  CHECK(r.holds);
  const double K = kantorovich_constant(e.bounds()->h());
  const PositiveDefiniteMatrix sigma = karcher_mean(e).solution;
  const auto verdict = loewner_leq(arithmetic_mean(e).base(), pd_scale(sigma, K).base());
  CHECK(r.margin == doctest::Approx(verdict.margin).epsilon(1e-9));
}

TEST_CASE("monotonicity under the identity map is an equality on the left") {
  const MatrixEnsemble e = generate_ensemble(3, 3, 1.0, 4.0, 11);
  CheckInstance inst = basic_instance(e);
  inst.map = PositiveLinearMap::identity(3);
  const CheckResult r = run_check("thm32_info_mono", inst);
  CHECK(r.holds);
  CHECK(std::abs(r.margin) <= 1e-8);
}

TEST_CASE("inner product form pinches to equality on shared eigenvectors") {
  // diagonal members commute; any coordinate vector is a shared eigenvector
  Rng rng(3);
  std::vector<PositiveDefiniteMatrix> mats;
  for (int i = 0; i < 3; ++i) {
    Matrix d = Matrix::Zero(3, 3);
    for (int j = 0; j < 3; ++j) d(j, j) = rng.uniform(1.0, 4.0);
    mats.emplace_back(d);
  }
  MatrixEnsemble e(std::move(mats), {0.3, 0.3, 0.4}, SpectrumBounds(1.0, 4.0));
  CheckInstance inst = basic_instance(e);
  CVector x = CVector::Zero(3);
  x(1) = 1.0;
  inst.vector = x;
  const CheckResult r = run_check("thm36_vector", inst);
  CHECK(r.holds);
  CHECK(std::abs(r.margin) <= 1e-9);
}

TEST_CASE("every check passes on seeded instances") {
  InstanceRecipe recipe;
  recipe.dim = 3;
  recipe.count = 3;
  for (const auto& id : all_check_ids()) {
    for (int trial = 0; trial < 3; ++trial) {
      CAPTURE(id);
      CAPTURE(trial);
      const CheckInstance inst = make_instance(id, recipe, 7, trial);
      const CheckResult r = run_check(id, inst);
      CHECK(r.holds);
      CHECK(r.check_id == id);
      CHECK(r.instance_fingerprint == inst.fingerprint);
    }
  }
}

TEST_CASE("missing pieces are named, not guessed") {
  const MatrixEnsemble e = generate_ensemble(3, 3, 1.0, 4.0, 2);
  CHECK_THROWS_AS(run_check("thm32_info_mono", basic_instance(e)), ConfigError);
  CHECK_THROWS_AS(run_check("thm36_vector", basic_instance(e)), ConfigError);
  CHECK_THROWS_AS(run_check("thm41_increasing", basic_instance(e)), ConfigError);

  CheckInstance wrong_direction = basic_instance(e);
  wrong_direction.monotone = MonotoneFunction::make_inverse_power(0.5);
  CHECK_THROWS_AS(run_check("thm41_increasing", wrong_direction), ConfigError);

  CheckInstance wrong_dim_map = basic_instance(e);
  wrong_dim_map.map = PositiveLinearMap::identity(4);
  CHECK_THROWS_AS(run_check("thm32_info_mono", wrong_dim_map), ConfigError);

  MatrixEnsemble unbounded(e.matrices(), e.weights());
  CHECK_THROWS_AS(run_check("prop22_reverse_am", basic_instance(unbounded)), ConfigError);

  const MatrixEnsemble single = generate_ensemble(3, 1, 1.0, 4.0, 2);
  CheckInstance pair = basic_instance(single);
  Rng rng(4);
  pair.vector = rng.unit_vector(3);
  CHECK_THROWS_AS(run_check("bourin_special", pair), ConfigError);
}

TEST_CASE("verdicts are scale invariant") {
  const MatrixEnsemble e = generate_ensemble(3, 3, 1.0, 6.0, 29);
  for (const char* id : {"eq6_sandwich", "prop22_reverse_am", "prop23_refined_am", "prop43_inverse"}) {
    const bool base = run_check(id, basic_instance(e)).holds;
    for (double c : {0.5, 3.0}) {
      CAPTURE(id);
      CAPTURE(c);
      CHECK(run_check(id, basic_instance(scaled_ensemble(e, c))).holds == base);
    }
  }
}

TEST_CASE("near-identical ensembles sit at the equality edge") {
  InstanceRecipe recipe;
  recipe.dim = 3;
  recipe.count = 3;
  recipe.M = 1.0 + 1e-9;
  recipe.identical = true;
  for (const char* id : {"eq6_sandwich", "prop22_reverse_am", "prop22_reverse_hm", "prop23_refined_am",
                         "prop23_refined_hm", "lemma_inv_sum"}) {
    CAPTURE(id);
    const CheckInstance inst = make_instance(id, recipe, 1, 0);
    const CheckResult r = run_check(id, inst);
    CHECK(r.holds);
    CHECK(std::abs(r.margin) <= 1e-7);
  }
}

TEST_CASE("instances are deterministic and trial-dependent") {
  InstanceRecipe recipe;
  const CheckInstance a = make_instance("eq6_sandwich", recipe, 9, 0);
  const CheckInstance b = make_instance("eq6_sandwich", recipe, 9, 0);
  CHECK(a.fingerprint == b.fingerprint);
  REQUIRE(a.ensemble.size() == b.ensemble.size());
  for (int i = 0; i < a.ensemble.size(); ++i)
    CHECK((a.ensemble.matrix(i).entries() - b.ensemble.matrix(i).entries()).norm() == 0.0);

  const CheckInstance c = make_instance("eq6_sandwich", recipe, 9, 1);
  CHECK(c.fingerprint != a.fingerprint);
  CHECK((c.ensemble.matrix(0).entries() - a.ensemble.matrix(0).entries()).norm() > 0.0);

  const CheckInstance d = make_instance("eq6_sandwich", recipe, 10, 0);
  CHECK((d.ensemble.matrix(0).entries() - a.ensemble.matrix(0).entries()).norm() > 0.0);

  // the two consumers of the recipe see the same requirements
  const CheckInstance m = make_instance("thm32_info_mono", recipe, 9, 2);
  REQUIRE(m.map.has_value());
  CHECK(m.map->in_dim() == recipe.dim);
  const CheckInstance v = make_instance("thm36_vector", recipe, 9, 0);
  REQUIRE(v.vector.has_value());
  CHECK(v.vector->size() == recipe.dim);
}

TEST_CASE("suite runs agree between serial and parallel execution") {
  std::vector<SuiteItem> items;
  InstanceRecipe recipe;
  recipe.dim = 3;
  items.push_back({"eq6_sandwich", recipe, 3});
  items.push_back({"thm32_info_mono", recipe, 2});
  items.push_back({"prop42_defect", recipe, 2});
  const auto serial = run_suite(items, 13, Execution::serial);
  const auto parallel = run_suite(items, 13, Execution::parallel);
  REQUIRE(serial.size() == 7);
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].check_id == parallel[i].check_id);
    CHECK(serial[i].instance_fingerprint == parallel[i].instance_fingerprint);
    CHECK(serial[i].margin == parallel[i].margin);
    CHECK(serial[i].holds == parallel[i].holds);
  }
  // item-then-trial order
  CHECK(serial[0].check_id == "eq6_sandwich");
  CHECK(serial[3].check_id == "thm32_info_mono");
  CHECK(serial[5].check_id == "prop42_defect");

  const auto sums = summarize(serial);
  REQUIRE(sums.size() == 3);
  CHECK(sums[0].check_id == "eq6_sandwich");
  CHECK(sums[0].trials == 3);
  CHECK(sums[0].failures == 0);
  double least = serial[0].margin;
  for (int i = 1; i < 3; ++i) least = std::min(least, serial[static_cast<std::size_t>(i)].margin);
  CHECK(sums[0].min_margin == least);

  CHECK(run_suite({}, 1).empty());
  CHECK(run_suite({{"eq6_sandwich", recipe, 0}}, 1).empty());
}

TEST_CASE("non-convergence carries the fingerprint out") {
  InstanceRecipe recipe;
  recipe.dim = 4;
  recipe.count = 4;
  recipe.M = 30.0;
  recipe.generator = "power:0.5";
  CheckInstance inst = make_instance("eq6_sandwich", recipe, 3, 0);
  inst.solve_options.max_iter = 1;
  CHECK_THROWS_WITH_AS(run_check("eq6_sandwich", inst), doctest::Contains(inst.fingerprint.c_str()), SolverError);
}
