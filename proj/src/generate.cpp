#include "gke/generate.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gke/errors.hpp"
#include "gke/rng.hpp"

namespace gke {

MatrixEnsemble generate_ensemble(int k, int n, double m, double M, std::uint64_t seed) {
  if (k < 1 || k > 16) throw RangeError("dimension must be in [1, 16], got " + std::to_string(k));
  if (n < 1) throw RangeError("ensemble size must be positive, got " + std::to_string(n));
  if (!(m > 0.0 && m < M)) {
    throw RangeError("spectrum needs 0 < m < M, got m=" + std::to_string(m) + ", M=" + std::to_string(M));
  }
  Rng rng(seed);
  std::vector<double> weights = rng.simplex_weights(n);
  const double log_m = std::log(m);
  const double log_M = std::log(M);
  std::vector<PositiveDefiniteMatrix> mats;
  mats.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    RealVector lambda(k);
    if (k == 1) {
      // a scalar member cannot carry both extremes; pin them across members
      if (i == 0) {
        lambda(0) = m;
      } else if (i == n - 1) {
        lambda(0) = M;
      } else {
        lambda(0) = std::exp(rng.uniform(log_m, log_M));
      }
    } else {
      lambda(0) = m;
      lambda(1) = M;
      for (int j = 2; j < k; ++j) lambda(j) = std::exp(rng.uniform(log_m, log_M));
    }
    const Matrix u = rng.unitary(k);
    mats.emplace_back(Matrix(u * lambda.asDiagonal() * u.adjoint()));
  }
  return MatrixEnsemble(std::move(mats), std::move(weights), SpectrumBounds(m, M));
}

}  // namespace gke
