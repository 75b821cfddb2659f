#pragma once

#include <optional>
#include <vector>

#include "gke/generators.hpp"
#include "gke/hermitian.hpp"

namespace gke {

/// Weighted tuple of same-dimension positive definite matrices, optionally
/// carrying spectral bounds m I <= A_i <= M I (validated on construction).
class MatrixEnsemble {
 public:
  MatrixEnsemble(std::vector<PositiveDefiniteMatrix> matrices, std::vector<double> weights,
                 std::optional<SpectrumBounds> bounds = std::nullopt);

  int size() const { return static_cast<int>(matrices_.size()); }
  int dim() const { return matrices_.front().dim(); }
  const std::vector<PositiveDefiniteMatrix>& matrices() const { return matrices_; }
  const PositiveDefiniteMatrix& matrix(int i) const { return matrices_.at(static_cast<std::size_t>(i)); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(int i) const { return weights_.at(static_cast<std::size_t>(i)); }
  const std::optional<SpectrumBounds>& bounds() const { return bounds_; }

  /// A_i -> A_i^{-1}; bounds become [1/M, 1/m].
  MatrixEnsemble inverted() const;

  /// A_i -> A_i^p for p > 0; bounds become [m^p, M^p].
  MatrixEnsemble elementwise_power(double p) const;

  /// A_i -> f(A_i); bounds map through f respecting its direction.
  MatrixEnsemble mapped(const MonotoneFunction& f) const;

  /// A_i -> X* A_i X. Bounds do not survive congruence and are dropped.
  MatrixEnsemble congruenced(const Matrix& x) const;

  MatrixEnsemble with_bounds(SpectrumBounds b) const;
  MatrixEnsemble reweighted(std::vector<double> weights) const;

 private:
  std::vector<PositiveDefiniteMatrix> matrices_;
  std::vector<double> weights_;
  std::optional<SpectrumBounds> bounds_;
};

/// Exact spectral hull of the ensemble: smallest and largest eigenvalue over
/// all members.
SpectrumBounds tight_bounds(const MatrixEnsemble& e);

}  // namespace gke
