#pragma once

#include <optional>
#include <vector>

#include "gke/ensemble.hpp"
#include "gke/generators.hpp"

namespace gke {

struct SolveReport {
  PositiveDefiniteMatrix solution;
  int iterations;
  double final_residual;  // Frobenius norm of sum_i w_i g(X^{-1/2} A_i X^{-1/2})
  bool converged;         // final_residual <= tolerance
  int restarts;           // step halvings / acceleration fallbacks
  double tolerance;       // effective residual threshold (opts.tol, or 1e-11 * k)
};

struct SolveOptions {
  double tol = 0.0;  // <= 0 selects the default 1e-11 * k
  int max_iter = 500;
  double step = 1.0;
  std::optional<PositiveDefiniteMatrix> initial;  // default: arithmetic mean
};

struct SolverError : Error {
  SolverError(const std::string& msg, SolveReport r) : Error(msg), report(std::move(r)) {}
  SolveReport report;
};

PositiveDefiniteMatrix arithmetic_mean(const MatrixEnsemble& e);
PositiveDefiniteMatrix harmonic_mean(const MatrixEnsemble& e);

/// Frobenius norm of the mean equation residual sum_i w_i g(X^{-1/2} A_i X^{-1/2}).
double gke_residual(const MatrixEnsemble& e, const Generator& g, const PositiveDefiniteMatrix& x);

/// Power mean: fixed point of X = sum_i w_i (X #_t A_i) for t in (0, 1],
/// extended to t in [-1, 0) through inversion. Picard iteration on that map
/// from the arithmetic mean, with safeguarded Anderson extrapolation so small
/// exponents converge inside the iteration budget.
SolveReport solve_power_mean(const MatrixEnsemble& e, double t, const SolveOptions& opts = {});

/// General mean: damped exponential update
/// X <- X^{1/2} exp(step * sum_i w_i g(X^{-1/2} A_i X^{-1/2})) X^{1/2},
/// with secant extrapolation over a short window of updates; a candidate is
/// kept only when it lowers the residual, otherwise the plain update runs
/// with step halving. Widely spread ensembles converge far inside the
/// iteration budget this way.
SolveReport solve_gke(const MatrixEnsemble& e, const Generator& g, const SolveOptions& opts = {});

/// solve_gke with the log generator.
SolveReport karcher_mean(const MatrixEnsemble& e, const SolveOptions& opts = {});

/// Scalar mean equation sum_i w_i g(a_i / x) = 0, bisected on
/// [min a, max a] to 1e-13 relative width.
double scalar_gke(const std::vector<double>& weights, const std::vector<double>& values, const Generator& g);

/// Matrix perspective X^{1/2} g(X^{-1/2} A X^{-1/2}) X^{1/2}.
HermitianMatrix generator_perspective(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& a,
                                      const Generator& g);

}  // namespace gke
