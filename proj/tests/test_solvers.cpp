#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gke/generate.hpp"
#include "gke/rng.hpp"
#include "gke/solvers.hpp"

using namespace gke;

namespace {

double rel_diff(const Matrix& a, const Matrix& b) { return (a - b).norm() / (1.0 + b.norm()); }

MatrixEnsemble diagonal_ensemble(int k, int n, std::uint64_t seed, double lo = 0.5, double hi = 8.0) {
  Rng rng(seed);
  std::vector<PositiveDefiniteMatrix> mats;
  for (int i = 0; i < n; ++i) {
    RealVector lambda(k);
    for (int j = 0; j < k; ++j) lambda(j) = std::exp(rng.uniform(std::log(lo), std::log(hi)));
    Matrix d = Matrix::Zero(k, k);
    d.diagonal() = lambda.cast<Complex>();
    mats.emplace_back(d);
  }
  return MatrixEnsemble(std::move(mats), rng.simplex_weights(n));
}

std::vector<Generator> solve_catalog() {
  return {Generator::make_log(), Generator::make_power(0.5), Generator::make_power(-0.5),
          Generator::make_power(1.0), Generator::make_power(-1.0)};
}

}  // namespace

TEST_CASE("arithmetic and harmonic means match direct sums") {
  const MatrixEnsemble e = generate_ensemble(4, 3, 1.0, 4.0, 3);
  Matrix sum = Matrix::Zero(4, 4);
  Matrix inv_sum = Matrix::Zero(4, 4);
  for (int i = 0; i < e.size(); ++i) {
    sum += e.weight(i) * e.matrix(i).entries();
    inv_sum += e.weight(i) * e.matrix(i).entries().inverse();
  }
  CHECK(rel_diff(arithmetic_mean(e).entries(), sum) < 1e-13);
  CHECK(rel_diff(harmonic_mean(e).entries(), inv_sum.inverse()) < 1e-12);
}

TEST_CASE("scalar mean equation reproduces the classical means") {
  const std::vector<double> w = {0.2, 0.5, 0.3};
  const std::vector<double> a = {1.0, 4.0, 9.0};
  const double geo = std::exp(0.2 * std::log(1.0) + 0.5 * std::log(4.0) + 0.3 * std::log(9.0));
  CHECK(scalar_gke(w, a, Generator::make_log()) == doctest::Approx(geo).epsilon(1e-12));
  const double ari = 0.2 * 1.0 + 0.5 * 4.0 + 0.3 * 9.0;
  CHECK(scalar_gke(w, a, Generator::make_affine()) == doctest::Approx(ari).epsilon(1e-12));
  const double har = 1.0 / (0.2 / 1.0 + 0.5 / 4.0 + 0.3 / 9.0);
  CHECK(scalar_gke(w, a, Generator::make_harmonic()) == doctest::Approx(har).epsilon(1e-12));
  for (double t : {0.5, -0.5}) {
    const double p = std::pow(0.2 * std::pow(1.0, t) + 0.5 * std::pow(4.0, t) + 0.3 * std::pow(9.0, t), 1.0 / t);
    CHECK(scalar_gke(w, a, Generator::make_power(t)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(scalar_gke({0.5, 0.4}, {1.0, 2.0}, Generator::make_log()), ValidationError);
  CHECK_THROWS_AS(scalar_gke({0.5, 0.5}, {1.0, -2.0}, Generator::make_log()), DomainError);
}

TEST_CASE("affine and harmonic generators reduce to closed forms") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MatrixEnsemble e = generate_ensemble(3, 4, 0.5, 6.0, seed);
    const SolveReport ra = solve_gke(e, Generator::make_affine());
    CHECK(ra.converged);
    CHECK(rel_diff(ra.solution.entries(), arithmetic_mean(e).entries()) < 1e-9);
    const SolveReport rh = solve_gke(e, Generator::make_harmonic());
    CHECK(rh.converged);
    CHECK(rel_diff(rh.solution.entries(), harmonic_mean(e).entries()) < 1e-9);
  }
}

TEST_CASE("commuting ensembles reduce to the scalar equation") {
  const MatrixEnsemble e = diagonal_ensemble(4, 3, 17);
  for (const Generator& g : solve_catalog()) {
    const SolveReport r = solve_gke(e, g);
    CHECK(r.converged);
    for (int j = 0; j < e.dim(); ++j) {
      std::vector<double> channel;
      for (int i = 0; i < e.size(); ++i) channel.push_back(e.matrix(i).entries()(j, j).real());
      const double want = scalar_gke(e.weights(), channel, g);
      CHECK(std::abs(r.solution.entries()(j, j).real() - want) < 1e-8 * (1.0 + want));
    }
    // off-diagonal stays zero for a diagonal ensemble
    Matrix off = r.solution.entries();
    off.diagonal().setZero();
    CHECK(off.norm() < 1e-10);
  }
}

TEST_CASE("two-matrix mean lands on the geodesic") {
  for (std::uint64_t seed = 30; seed < 36; ++seed) {
    const MatrixEnsemble e = generate_ensemble(3, 2, 1.0, 5.0, seed);
    const SolveReport r = karcher_mean(e);
    CHECK(r.converged);
    const PositiveDefiniteMatrix geo = weighted_geometric_pair(e.matrix(0), e.matrix(1), e.weight(1));
    CHECK(rel_diff(r.solution.entries(), geo.entries()) < 1e-9);
  }
}

TEST_CASE("single member is its own mean") {
  const MatrixEnsemble e = generate_ensemble(4, 1, 1.0, 9.0, 77);
  for (const Generator& g : solve_catalog()) {
    const SolveReport r = solve_gke(e, g);
    CHECK(r.converged);
    CHECK(rel_diff(r.solution.entries(), e.matrix(0).entries()) < 1e-10);
  }
}

TEST_CASE("report invariants and the residual certificate") {
  const MatrixEnsemble e = generate_ensemble(5, 4, 1.0, 10.0, 8);
  for (const Generator& g : solve_catalog()) {
    const SolveReport r = solve_gke(e, g);
    CHECK(r.converged);
    CHECK(r.tolerance == doctest::Approx(1e-11 * 5).epsilon(1e-15));
    CHECK(r.final_residual <= r.tolerance);
    // the report's residual is reproducible from the published solution
    CHECK(gke_residual(e, g, r.solution) == r.final_residual);
  }
  SolveOptions tight;
  tight.tol = 1e-9;
  const SolveReport rt = solve_gke(e, Generator::make_log(), tight);
  CHECK(rt.tolerance == doctest::Approx(1e-9).epsilon(1e-15));
}

TEST_CASE("solution is independent of the starting point") {
  const MatrixEnsemble e = generate_ensemble(4, 4, 1.0, 20.0, 19);
  for (const Generator& g : solve_catalog()) {
    const SolveReport base = solve_gke(e, g);
    SolveOptions opts;
    opts.initial = harmonic_mean(e);
    const SolveReport alt = solve_gke(e, g, opts);
    CHECK(base.converged);
    CHECK(alt.converged);
    CHECK(rel_diff(base.solution.entries(), alt.solution.entries()) < 1e-7);
  }
}

TEST_CASE("invariance properties") {
  const MatrixEnsemble e = generate_ensemble(3, 3, 1.0, 6.0, 23);
  Rng rng(99);
  const Matrix u = rng.unitary(3);

  SUBCASE("unitary conjugation commutes with any generator") {
    const Generator g = Generator::make_power(0.5);
    const SolveReport base = solve_gke(e, g);
    const SolveReport moved = solve_gke(e.congruenced(u), g);
    CHECK(rel_diff(moved.solution.entries(), u.adjoint() * base.solution.entries() * u) < 1e-9);
  }

  SUBCASE("general congruence commutes with the log generator") {
    Matrix t = u;
    t.col(0) *= 2.0;  // invertible, not unitary
    const SolveReport base = karcher_mean(e);
    const SolveReport moved = karcher_mean(e.congruenced(t));
    CHECK(rel_diff(moved.solution.entries(), t.adjoint() * base.solution.entries() * t) < 1e-8);
  }

  SUBCASE("member order does not matter") {
    std::vector<PositiveDefiniteMatrix> mats = {e.matrix(2), e.matrix(0), e.matrix(1)};
    std::vector<double> w = {e.weight(2), e.weight(0), e.weight(1)};
    const MatrixEnsemble shuffled(std::move(mats), std::move(w));
    for (const Generator& g : solve_catalog()) {
      CHECK(rel_diff(solve_gke(shuffled, g).solution.entries(), solve_gke(e, g).solution.entries()) < 1e-9);
    }
  }

  SUBCASE("positive scaling is homogeneous") {
    std::vector<PositiveDefiniteMatrix> mats;
    for (const auto& a : e.matrices()) mats.push_back(pd_scale(a, 3.0));
    const MatrixEnsemble scaled(std::move(mats), e.weights());
    for (const Generator& g : solve_catalog()) {
      CHECK(rel_diff(solve_gke(scaled, g).solution.entries(), 3.0 * solve_gke(e, g).solution.entries()) < 1e-9);
    }
  }
}

TEST_CASE("repeat solves are bitwise identical") {
  const MatrixEnsemble e = generate_ensemble(4, 3, 1.0, 4.0, 55);
  const SolveReport a = karcher_mean(e);
  const SolveReport b = karcher_mean(e);
  CHECK((a.solution.entries() - b.solution.entries()).norm() == 0.0);
  CHECK(a.iterations == b.iterations);
  CHECK(a.final_residual == b.final_residual);
}

TEST_CASE("exhausted budgets are reported, not hidden") {
  const MatrixEnsemble e = generate_ensemble(4, 4, 1.0, 30.0, 70);
  SolveOptions opts;
  opts.max_iter = 1;
  const SolveReport r = solve_gke(e, Generator::make_power(0.5), opts);
  CHECK_FALSE(r.converged);
  CHECK(r.final_residual > r.tolerance);
  CHECK(r.iterations <= 1);
}

TEST_CASE("power mean endpoints") {
  const MatrixEnsemble e = generate_ensemble(4, 3, 1.0, 7.0, 31);
  const SolveReport p1 = solve_power_mean(e, 1.0);
  CHECK(p1.converged);
  CHECK(rel_diff(p1.solution.entries(), arithmetic_mean(e).entries()) < 1e-10);
  const SolveReport pm1 = solve_power_mean(e, -1.0);
  CHECK(pm1.converged);
  CHECK(rel_diff(pm1.solution.entries(), harmonic_mean(e).entries()) < 1e-9);
}

TEST_CASE("power mean agrees with the general solver") {
  const MatrixEnsemble e = generate_ensemble(3, 3, 1.0, 5.0, 41);
  for (double t : {0.5, 0.25, -0.5}) {
    const SolveReport via_fixed_point = solve_power_mean(e, t);
    const SolveReport via_gke = solve_gke(e, Generator::make_power(t));
    CHECK(via_fixed_point.converged);
    CHECK(via_gke.converged);
    CHECK(rel_diff(via_fixed_point.solution.entries(), via_gke.solution.entries()) < 1e-7);
  }
}

TEST_CASE("power mean on commuting ensembles matches the scalar power mean") {
  const MatrixEnsemble e = diagonal_ensemble(3, 4, 61);
  for (double t : {0.5, -0.5, 0.01}) {
    const SolveReport r = solve_power_mean(e, t);
    CHECK(r.converged);
    for (int j = 0; j < e.dim(); ++j) {
      double s = 0.0;
      for (int i = 0; i < e.size(); ++i) s += e.weight(i) * std::pow(e.matrix(i).entries()(j, j).real(), t);
      const double want = std::pow(s, 1.0 / t);
      CHECK(std::abs(r.solution.entries()(j, j).real() - want) < 1e-7 * (1.0 + want));
    }
  }
}

TEST_CASE("tiny exponents converge inside the budget") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const MatrixEnsemble e = generate_ensemble(4, 3, 1.0, 2.0, 100 + seed);
    for (double t : {0.01, -0.01}) {
      const SolveReport r = solve_power_mean(e, t);
      CHECK(r.converged);
      CHECK(r.iterations <= 500);
      CHECK(gke_residual(e, Generator::make_power(t), r.solution) <= r.tolerance);
    }
  }
}

TEST_CASE("parameter validation") {
  const MatrixEnsemble e = generate_ensemble(2, 2, 1.0, 2.0, 1);
  CHECK_THROWS_AS(solve_power_mean(e, 1.5), RangeError);
  CHECK_THROWS_AS(solve_power_mean(e, 1e-9), RangeError);
  SolveOptions bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(solve_gke(e, Generator::make_log(), bad), RangeError);
}
