#include "gke/hermitian.hpp"

#include <cmath>
#include <sstream>

#include "gke/rng.hpp"

namespace gke {

namespace {

Matrix hermitian_average(const Matrix& m) {
  Matrix out = 0.5 * (m + m.adjoint());
  for (Eigen::Index i = 0; i < out.rows(); ++i) out(i, i) = Complex(out(i, i).real(), 0.0);
  return out;
}

std::string dim_string(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

std::string matrix_fingerprint(const Matrix& m) {
  const std::uint64_t h = fnv1a(m.data(), sizeof(Complex) * static_cast<std::size_t>(m.size()));
  std::ostringstream os;
  os << dim_string(m) << ":" << std::hex << h;
  return os.str();
}

HermitianMatrix::HermitianMatrix(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1)
    throw DimensionError("HermitianMatrix: need a square matrix, got " + dim_string(entries));
  const double scale = entries.norm();
  const double asym = (entries - entries.adjoint()).norm();
  if (asym > 1e-8 * (1.0 + scale)) {
    std::ostringstream os;
    os << "HermitianMatrix: input is not Hermitian (asymmetry " << asym << " vs norm " << scale << ")";
    throw ValidationError(os.str());
  }
  entries_ = hermitian_average(entries);
}

HermitianMatrix HermitianMatrix::identity(int k) { return HermitianMatrix(Matrix::Identity(k, k)); }

HermitianMatrix HermitianMatrix::zero(int k) { return HermitianMatrix(Matrix::Zero(k, k)); }

EigenSystem eigendecompose(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.entries());
  if (solver.info() != Eigen::Success)
    throw EigensolverError("eigendecompose: solver failed on matrix " + matrix_fingerprint(a.entries()));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

PositiveDefiniteMatrix::PositiveDefiniteMatrix(const HermitianMatrix& base) : base_(base), eig_min_(0.0) {
  const EigenSystem es = eigendecompose(base_);
  eig_min_ = es.eigenvalues(0);
  if (!(eig_min_ > 0.0)) {
    std::ostringstream os;
    os << "PositiveDefiniteMatrix: smallest eigenvalue " << eig_min_ << " is not positive (matrix "
       << matrix_fingerprint(base_.entries()) << ")";
    throw DomainError(os.str());
  }
}

PositiveDefiniteMatrix PositiveDefiniteMatrix::identity(int k) {
  return PositiveDefiniteMatrix(HermitianMatrix::identity(k));
}

SpectrumBounds::SpectrumBounds(double m_in, double M_in) : m(m_in), M(M_in) {
  if (!(m > 0.0) || !(M > m) || !std::isfinite(M)) {
    std::ostringstream os;
    os << "SpectrumBounds: need 0 < m < M, got m=" << m_in << " M=" << M_in;
    throw RangeError(os.str());
  }
}

HermitianMatrix apply_scalar_function(const ScalarFunction& f, const HermitianMatrix& a, Interval domain) {
  const EigenSystem es = eigendecompose(a);
  const int k = a.dim();
  RealVector mapped(k);
  for (int i = 0; i < k; ++i) {
    const double lambda = es.eigenvalues(i);
    if (!(lambda > domain.lo) || !(lambda < domain.hi)) {
      std::ostringstream os;
      os << "apply_scalar_function: eigenvalue " << lambda << " (index " << i << ") outside domain (" << domain.lo
         << ", " << domain.hi << ")";
      throw DomainError(os.str());
    }
    mapped(i) = f(lambda);
    if (!std::isfinite(mapped(i))) {
      std::ostringstream os;
      os << "apply_scalar_function: f(" << lambda << ") is not finite";
      throw DomainError(os.str());
    }
  }
  const Matrix out = es.vectors * mapped.asDiagonal() * es.vectors.adjoint();
  return HermitianMatrix(out);
}

HermitianMatrix apply_scalar_function(const ScalarFunction& f, const PositiveDefiniteMatrix& a) {
  return apply_scalar_function(f, a.base(), positive_axis());
}

HermitianMatrix apply_scalar_function(const ScalarFunction& f, const PositiveDefiniteMatrix& a, Interval domain) {
  return apply_scalar_function(f, a.base(), domain);
}

HermitianMatrix congruence(const Matrix& x, const HermitianMatrix& a) {
  if (x.rows() != a.dim() || x.cols() != a.dim())
    throw DimensionError("congruence: transform is " + dim_string(x) + " but matrix has dim " +
                         std::to_string(a.dim()));
  Eigen::JacobiSVD<Matrix> svd(x);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(smin > smax * a.dim() * 1e-14)) {
    std::ostringstream os;
    os << "congruence: transform is numerically singular (sigma_min=" << smin << ", sigma_max=" << smax << ")";
    throw ValidationError(os.str());
  }
  return HermitianMatrix(x.adjoint() * a.entries() * x);
}

PositiveDefiniteMatrix congruence(const Matrix& x, const PositiveDefiniteMatrix& a) {
  return PositiveDefiniteMatrix(congruence(x, a.base()));
}

double loewner_default_tolerance(const HermitianMatrix& a, const HermitianMatrix& b) {
  return 1e-8 * (1.0 + spectral_norm(a) + spectral_norm(b));
}

LoewnerVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tolerance) {
  if (a.dim() != b.dim())
    throw DimensionError("loewner_leq: dimensions differ (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  const HermitianMatrix diff(b.entries() - a.entries());
  const EigenSystem es = eigendecompose(diff);
  const double margin = es.eigenvalues(0);
  return {margin >= -tolerance, margin, tolerance};
}

LoewnerVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b) {
  return loewner_leq(a, b, loewner_default_tolerance(a, b));
}

double spectral_norm(const HermitianMatrix& a) {
  const EigenSystem es = eigendecompose(a);
  return std::max(std::abs(es.eigenvalues(0)), std::abs(es.eigenvalues(a.dim() - 1)));
}

double trace_norm(const HermitianMatrix& a) {
  const EigenSystem es = eigendecompose(a);
  return es.eigenvalues.cwiseAbs().sum();
}

double frobenius_norm(const HermitianMatrix& a) { return a.entries().norm(); }

namespace {

PositiveDefiniteMatrix map_positive(const PositiveDefiniteMatrix& a, const ScalarFunction& f) {
  return PositiveDefiniteMatrix(apply_scalar_function(f, a));
}

}  // namespace

PositiveDefiniteMatrix pd_sqrt(const PositiveDefiniteMatrix& a) {
  return map_positive(a, [](double x) { return std::sqrt(x); });
}

PositiveDefiniteMatrix pd_inv_sqrt(const PositiveDefiniteMatrix& a) {
  return map_positive(a, [](double x) { return 1.0 / std::sqrt(x); });
}

PositiveDefiniteMatrix pd_inverse(const PositiveDefiniteMatrix& a) {
  return map_positive(a, [](double x) { return 1.0 / x; });
}

PositiveDefiniteMatrix pd_power(const PositiveDefiniteMatrix& a, double p) {
  return map_positive(a, [p](double x) { return std::pow(x, p); });
}

PositiveDefiniteMatrix hermitian_exp(const HermitianMatrix& a) {
  return PositiveDefiniteMatrix(apply_scalar_function([](double x) { return std::exp(x); }, a));
}

PositiveDefiniteMatrix pd_scale(const PositiveDefiniteMatrix& a, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw RangeError("pd_scale: factor must be positive and finite");
  return PositiveDefiniteMatrix(HermitianMatrix(c * a.entries()));
}

PositiveDefiniteMatrix weighted_geometric_pair(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                               double t) {
  if (a.dim() != b.dim())
    throw DimensionError("weighted_geometric_pair: dimensions differ (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  if (!(t >= 0.0) || !(t <= 1.0)) throw RangeError("weighted_geometric_pair: t must lie in [0, 1]");
  const EigenSystem ea = eigendecompose(a.base());
  const int k = a.dim();
  RealVector rt(k), irt(k);
  for (int i = 0; i < k; ++i) {
    rt(i) = std::sqrt(ea.eigenvalues(i));
    irt(i) = 1.0 / rt(i);
  }
  const Matrix a_sqrt = ea.vectors * rt.asDiagonal() * ea.vectors.adjoint();
  const Matrix a_inv_sqrt = ea.vectors * irt.asDiagonal() * ea.vectors.adjoint();
  const PositiveDefiniteMatrix inner{HermitianMatrix(a_inv_sqrt * b.entries() * a_inv_sqrt)};
  const HermitianMatrix inner_pow = apply_scalar_function([t](double x) { return std::pow(x, t); }, inner);
  return PositiveDefiniteMatrix(HermitianMatrix(a_sqrt * inner_pow.entries() * a_sqrt));
}

}  // namespace gke
