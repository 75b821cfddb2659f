#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gke/ensemble.hpp"
#include "gke/hermitian.hpp"

namespace gke {

/// Unital positive linear map between Hermitian spaces. Construction verifies
/// unitality (Phi(I) = I within 1e-10) and spot-checks positivity on random
/// PSD inputs.
class PositiveLinearMap {
 public:
  enum class Kind { isometry_conjugation, pinching, trace_state, vector_state, mixture };

  /// Phi(A) = V* A V for an isometry V (k1 x k2 with V* V = I).
  static PositiveLinearMap isometry_conjugation(const Matrix& v);

  /// Block-diagonal projection onto a partition of {0, ..., k-1}.
  static PositiveLinearMap pinching(const std::vector<std::vector<int>>& blocks, int dim);

  /// A -> (tr A / k1) * I_{k2}.
  static PositiveLinearMap trace_state(int in_dim, int out_dim);

  /// A -> [<A x, x>] for a unit vector x (1 x 1 output).
  static PositiveLinearMap vector_state(const CVector& x);

  /// Convex combination of maps with common input and output dimensions.
  static PositiveLinearMap mixture(const std::vector<std::pair<double, PositiveLinearMap>>& parts);

  /// Pinching with the trivial one-block partition.
  static PositiveLinearMap identity(int dim);

  /// "pinch:1|2,3" (1-based indices), "isometry:k2=2:seed=7", "trace",
  /// "trace:k2=2", "vecstate:seed=7", "identity",
  /// "mix:0.3*pinch:1|2,0.7*trace".
  static PositiveLinearMap parse(const std::string& spec, int in_dim);

  Kind kind() const;
  int in_dim() const;
  int out_dim() const;
  std::string name() const;

  HermitianMatrix apply(const HermitianMatrix& a) const;
  PositiveDefiniteMatrix apply(const PositiveDefiniteMatrix& a) const;

  /// Maps every member; spectral bounds carry over unchanged.
  MatrixEnsemble apply(const MatrixEnsemble& e) const;

  struct Impl;  // opaque; defined with the implementation

 private:
  explicit PositiveLinearMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Seeded map of the requested kind; deterministic in (kind, dims, seed).
PositiveLinearMap make_random_map(PositiveLinearMap::Kind kind, int in_dim, int out_dim, std::uint64_t seed);

}  // namespace gke
