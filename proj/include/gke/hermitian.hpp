#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "gke/errors.hpp"

namespace gke {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Dense Hermitian matrix. Construction averages A with its adjoint and
/// rejects input whose asymmetry exceeds 1e-8 relative to its Frobenius norm.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

  static HermitianMatrix identity(int k);
  static HermitianMatrix zero(int k);

 private:
  Matrix entries_;
};

struct EigenSystem {
  RealVector eigenvalues;  // ascending
  Matrix vectors;          // columns form a unitary basis
};

/// Full spectral decomposition. Throws EigensolverError (with a matrix
/// fingerprint) if the dense solver fails to converge.
EigenSystem eigendecompose(const HermitianMatrix& a);

/// Hermitian matrix certified positive definite at construction; caches the
/// smallest eigenvalue found during certification.
class PositiveDefiniteMatrix {
 public:
  explicit PositiveDefiniteMatrix(const HermitianMatrix& base);
  explicit PositiveDefiniteMatrix(const Matrix& entries) : PositiveDefiniteMatrix(HermitianMatrix(entries)) {}

  const HermitianMatrix& base() const { return base_; }
  const Matrix& entries() const { return base_.entries(); }
  int dim() const { return base_.dim(); }
  double eig_min() const { return eig_min_; }

  static PositiveDefiniteMatrix identity(int k);

 private:
  HermitianMatrix base_;
  double eig_min_;
};

/// Spectral interval 0 < m < M used to bound ensembles.
struct SpectrumBounds {
  double m;
  double M;
  SpectrumBounds(double m_in, double M_in);
  double h() const { return M / m; }
};

struct LoewnerVerdict {
  bool holds;
  double margin;  // smallest eigenvalue of B - A
  double tolerance;
};

/// Open interval used as a functional-calculus domain; endpoints excluded.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

inline Interval positive_axis() { return {0.0, std::numeric_limits<double>::infinity()}; }

using ScalarFunction = std::function<double(double)>;

/// f applied through the spectral decomposition: U diag(f(lambda)) U*.
/// Eigenvalues outside the open domain raise DomainError naming the offender.
HermitianMatrix apply_scalar_function(const ScalarFunction& f, const HermitianMatrix& a, Interval domain = {});
HermitianMatrix apply_scalar_function(const ScalarFunction& f, const PositiveDefiniteMatrix& a);
HermitianMatrix apply_scalar_function(const ScalarFunction& f, const PositiveDefiniteMatrix& a, Interval domain);

/// X* A X for invertible X. Numerically singular X is rejected.
HermitianMatrix congruence(const Matrix& x, const HermitianMatrix& a);
PositiveDefiniteMatrix congruence(const Matrix& x, const PositiveDefiniteMatrix& a);

double loewner_default_tolerance(const HermitianMatrix& a, const HermitianMatrix& b);

/// Order predicate A <= B: margin is the least eigenvalue of B - A and the
/// verdict holds when margin >= -tolerance. The two-argument form uses the
/// scale-relative default 1e-8 * (1 + ||A|| + ||B||).
LoewnerVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tolerance);
LoewnerVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b);

double spectral_norm(const HermitianMatrix& a);
double trace_norm(const HermitianMatrix& a);
double frobenius_norm(const HermitianMatrix& a);

PositiveDefiniteMatrix pd_sqrt(const PositiveDefiniteMatrix& a);
PositiveDefiniteMatrix pd_inv_sqrt(const PositiveDefiniteMatrix& a);
PositiveDefiniteMatrix pd_inverse(const PositiveDefiniteMatrix& a);
PositiveDefiniteMatrix pd_power(const PositiveDefiniteMatrix& a, double p);
PositiveDefiniteMatrix hermitian_exp(const HermitianMatrix& a);
PositiveDefiniteMatrix pd_scale(const PositiveDefiniteMatrix& a, double c);

/// Weighted two-matrix geometric mean A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2},
/// t in [0,1].
PositiveDefiniteMatrix weighted_geometric_pair(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                               double t);

/// Short content hash used in diagnostics.
std::string matrix_fingerprint(const Matrix& m);

}  // namespace gke
