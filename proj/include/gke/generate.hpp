#pragma once

#include <cstdint>

#include "gke/ensemble.hpp"

namespace gke {

/// Seeded random ensemble: each member is U diag(lambda) U* with lambda
/// log-uniform in [m, M] and the extremes pinned, so the spectral hull is
/// exactly [m, M]; weights come from a Dirichlet(1,...,1) draw. 1 <= k <= 16.
MatrixEnsemble generate_ensemble(int k, int n, double m, double M, std::uint64_t seed);

}  // namespace gke
