#include "gke/ensemble.hpp"

#include <cmath>
#include <sstream>

namespace gke {

MatrixEnsemble::MatrixEnsemble(std::vector<PositiveDefiniteMatrix> matrices, std::vector<double> weights,
                               std::optional<SpectrumBounds> bounds)
    : matrices_(std::move(matrices)), weights_(std::move(weights)), bounds_(bounds) {
  if (matrices_.empty()) throw DimensionError("MatrixEnsemble: need at least one matrix");
  const int k = matrices_.front().dim();
  for (std::size_t i = 1; i < matrices_.size(); ++i) {
    if (matrices_[i].dim() != k) {
      std::ostringstream os;
      os << "MatrixEnsemble: matrix " << i << " has dim " << matrices_[i].dim() << ", expected " << k;
      throw DimensionError(os.str());
    }
  }
  if (weights_.size() != matrices_.size()) {
    std::ostringstream os;
    os << "MatrixEnsemble: " << weights_.size() << " weights for " << matrices_.size() << " matrices";
    throw ValidationError(os.str());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      std::ostringstream os;
      os << "MatrixEnsemble: weight " << i << " = " << weights_[i] << " is not strictly positive";
      throw ValidationError(os.str());
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "MatrixEnsemble: weights sum to " << sum << ", expected 1 within 1e-12";
    throw ValidationError(os.str());
  }
  if (bounds_) {
    const HermitianMatrix lower(bounds_->m * Matrix::Identity(k, k));
    const HermitianMatrix upper(bounds_->M * Matrix::Identity(k, k));
    for (std::size_t i = 0; i < matrices_.size(); ++i) {
      if (!loewner_leq(lower, matrices_[i].base()).holds || !loewner_leq(matrices_[i].base(), upper).holds) {
        std::ostringstream os;
        os << "MatrixEnsemble: matrix " << i << " escapes declared bounds [" << bounds_->m << ", " << bounds_->M
           << "] (eig_min=" << matrices_[i].eig_min() << ")";
        throw ValidationError(os.str());
      }
    }
  }
}

MatrixEnsemble MatrixEnsemble::inverted() const {
  std::vector<PositiveDefiniteMatrix> inv;
  inv.reserve(matrices_.size());
  for (const auto& a : matrices_) inv.push_back(pd_inverse(a));
  std::optional<SpectrumBounds> b;
  if (bounds_) b = SpectrumBounds(1.0 / bounds_->M, 1.0 / bounds_->m);
  return MatrixEnsemble(std::move(inv), weights_, b);
}

MatrixEnsemble MatrixEnsemble::elementwise_power(double p) const {
  if (!(p > 0.0)) throw RangeError("elementwise_power: need p > 0");
  std::vector<PositiveDefiniteMatrix> powered;
  powered.reserve(matrices_.size());
  for (const auto& a : matrices_) powered.push_back(pd_power(a, p));
  std::optional<SpectrumBounds> b;
  if (bounds_) b = SpectrumBounds(std::pow(bounds_->m, p), std::pow(bounds_->M, p));
  return MatrixEnsemble(std::move(powered), weights_, b);
}

MatrixEnsemble MatrixEnsemble::mapped(const MonotoneFunction& f) const {
  std::vector<PositiveDefiniteMatrix> out;
  out.reserve(matrices_.size());
  for (const auto& a : matrices_) out.push_back(PositiveDefiniteMatrix(apply_scalar_function(f.as_function(), a)));
  std::optional<SpectrumBounds> b;
  if (bounds_) {
    const double fm = f.eval(bounds_->m);
    const double fM = f.eval(bounds_->M);
    b = f.direction() == MonotoneFunction::Direction::increasing ? SpectrumBounds(fm, fM) : SpectrumBounds(fM, fm);
  }
  return MatrixEnsemble(std::move(out), weights_, b);
}

MatrixEnsemble MatrixEnsemble::congruenced(const Matrix& x) const {
  std::vector<PositiveDefiniteMatrix> out;
  out.reserve(matrices_.size());
  for (const auto& a : matrices_) out.push_back(congruence(x, a));
  return MatrixEnsemble(std::move(out), weights_, std::nullopt);
}

MatrixEnsemble MatrixEnsemble::with_bounds(SpectrumBounds b) const { return MatrixEnsemble(matrices_, weights_, b); }

MatrixEnsemble MatrixEnsemble::reweighted(std::vector<double> weights) const {
  return MatrixEnsemble(matrices_, std::move(weights), bounds_);
}

SpectrumBounds tight_bounds(const MatrixEnsemble& e) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& a : e.matrices()) {
    const EigenSystem es = eigendecompose(a.base());
    lo = std::min(lo, es.eigenvalues(0));
    hi = std::max(hi, es.eigenvalues(a.dim() - 1));
  }
  if (!(hi > lo)) {
    // a strictly scalar ensemble has no spread; widen by a hair so the
    // bounds object stays valid
    hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
  }
  return SpectrumBounds(lo, hi);
}

}  // namespace gke
