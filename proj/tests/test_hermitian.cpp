#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/SVD>

#include "gke/hermitian.hpp"
#include "gke/rng.hpp"

using namespace gke;

namespace {

HermitianMatrix random_hermitian(int k, std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(k, k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) a(r, c) = rng.complex_gaussian();
  }
  return HermitianMatrix(Matrix((a + a.adjoint()) / 2.0));
}

PositiveDefiniteMatrix random_pd(int k, std::uint64_t seed, double lo = 0.5, double hi = 3.0) {
  Rng rng(seed);
  const Matrix u = rng.unitary(k);
  RealVector lambda(k);
  for (int i = 0; i < k; ++i) lambda(i) = rng.uniform(lo, hi);
  return PositiveDefiniteMatrix(Matrix(u * lambda.asDiagonal() * u.adjoint()));
}

double min_eig(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return es.eigenvalues()(0);
}

}  // namespace

TEST_CASE("construction symmetrizes and rejects gross asymmetry") {
  Matrix a(2, 2);
  a << Complex(1.0, 0.0), Complex(2.0, 1.0), Complex(2.0, -1.0 + 1e-12), Complex(3.0, 1e-13);
  const HermitianMatrix h(a);
  CHECK((h.entries() - h.entries().adjoint()).norm() == 0.0);
  CHECK(h.entries()(1, 1).imag() == 0.0);

  Matrix bad(2, 2);
  bad << 1.0, 2.0, 5.0, 3.0;
  CHECK_THROWS_AS(HermitianMatrix{bad}, ValidationError);

  Matrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(HermitianMatrix{rect}, DimensionError);
}

TEST_CASE("eigendecomposition reconstructs and orders eigenvalues") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const HermitianMatrix h = random_hermitian(5, seed);
    const EigenSystem es = eigendecompose(h);
    const Matrix rebuilt = es.vectors * es.eigenvalues.asDiagonal() * es.vectors.adjoint();
    CHECK((rebuilt - h.entries()).norm() < 1e-12 * (1.0 + h.entries().norm()));
    CHECK((es.vectors.adjoint() * es.vectors - Matrix::Identity(5, 5)).norm() < 1e-12);
    for (int i = 1; i < 5; ++i) CHECK(es.eigenvalues(i - 1) <= es.eigenvalues(i));
  }
}

TEST_CASE("positive definite certification") {
  CHECK_NOTHROW(PositiveDefiniteMatrix(Matrix(1e-8 * Matrix::Identity(3, 3))));
  Matrix indef = Matrix::Identity(3, 3);
  indef(2, 2) = -0.5;
  CHECK_THROWS_AS(PositiveDefiniteMatrix{indef}, DomainError);
  CHECK_THROWS_AS(PositiveDefiniteMatrix(Matrix(Matrix::Zero(2, 2))), DomainError);
  const PositiveDefiniteMatrix p = random_pd(4, 9);
  CHECK(p.eig_min() > 0.0);
}

TEST_CASE("norms match an SVD oracle") {
  for (std::uint64_t seed : {4u, 5u}) {
    const HermitianMatrix h = random_hermitian(6, seed);
    Eigen::JacobiSVD<Matrix> svd(h.entries());
    const RealVector sv = svd.singularValues();
    CHECK(spectral_norm(h) == doctest::Approx(sv(0)).epsilon(1e-12));
    CHECK(trace_norm(h) == doctest::Approx(sv.sum()).epsilon(1e-12));
    CHECK(frobenius_norm(h) == doctest::Approx(h.entries().norm()).epsilon(1e-13));
  }
}

TEST_CASE("scalar functions act on the spectrum") {
  const PositiveDefiniteMatrix p = random_pd(4, 11);
  const HermitianMatrix sq = apply_scalar_function([](double x) { return x * x; }, p);
  CHECK((sq.entries() - p.entries() * p.entries()).norm() < 1e-12 * (1.0 + sq.entries().norm()));

  Matrix indef = Matrix::Identity(2, 2);
  indef(1, 1) = -2.0;
  const HermitianMatrix h(indef);
  CHECK_THROWS_WITH_AS(apply_scalar_function([](double x) { return std::log(x); }, h, positive_axis()),
                       doctest::Contains("-2"), DomainError);
}

TEST_CASE("loewner order margins") {
  Matrix a = Matrix::Zero(2, 2);
  a.diagonal() << 1.0, 2.0;
  Matrix b = Matrix::Zero(2, 2);
  b.diagonal() << 2.0, 3.0;
  const LoewnerVerdict forward = loewner_leq(HermitianMatrix(a), HermitianMatrix(b));
  CHECK(forward.holds);
  CHECK(forward.margin == doctest::Approx(1.0));
  const LoewnerVerdict backward = loewner_leq(HermitianMatrix(b), HermitianMatrix(a));
  CHECK_FALSE(backward.holds);
  CHECK(backward.margin == doctest::Approx(-1.0));

  // a tiny violation sits inside the default scale-relative tolerance
  const HermitianMatrix id = HermitianMatrix::identity(3);
  const HermitianMatrix shy(Matrix((1.0 - 1e-9) * Matrix::Identity(3, 3)));
  CHECK(loewner_leq(id, shy).holds);
  CHECK_FALSE(loewner_leq(id, shy, 1e-12).holds);
}

TEST_CASE("congruence matches the direct product and rejects singular frames") {
  Rng rng(21);
  const Matrix x = rng.unitary(3) * 2.5;
  const HermitianMatrix h = random_hermitian(3, 22);
  const HermitianMatrix c = congruence(x, h);
  CHECK((c.entries() - x.adjoint() * h.entries() * x).norm() < 1e-12 * (1.0 + c.entries().norm()));

  Matrix singular = Matrix::Zero(3, 3);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(congruence(singular, h), ValidationError);
}

TEST_CASE("spectral arithmetic round trips") {
  const PositiveDefiniteMatrix p = random_pd(5, 31);
  const PositiveDefiniteMatrix s = pd_sqrt(p);
  CHECK((s.entries() * s.entries() - p.entries()).norm() < 1e-12 * (1.0 + p.entries().norm()));
  CHECK((pd_inv_sqrt(p).entries() * s.entries() - Matrix::Identity(5, 5)).norm() < 1e-12);
  CHECK((pd_inverse(p).entries() * p.entries() - Matrix::Identity(5, 5)).norm() < 1e-11);
  CHECK((pd_power(p, 0.5).entries() - s.entries()).norm() < 1e-12);
  CHECK((pd_power(p, 1.0).entries() - p.entries()).norm() < 1e-12 * (1.0 + p.entries().norm()));
  const HermitianMatrix lg = apply_scalar_function([](double x) { return std::log(x); }, p);
  CHECK((hermitian_exp(lg).entries() - p.entries()).norm() < 1e-11 * (1.0 + p.entries().norm()));
  CHECK((pd_scale(p, 2.0).entries() - 2.0 * p.entries()).norm() == 0.0);
}

TEST_CASE("two-matrix geometric mean") {
  Matrix da = Matrix::Zero(2, 2);
  da.diagonal() << 1.0, 4.0;
  Matrix db = Matrix::Zero(2, 2);
  db.diagonal() << 4.0, 1.0;
  const PositiveDefiniteMatrix a(da);
  const PositiveDefiniteMatrix b(db);
  const PositiveDefiniteMatrix mid = weighted_geometric_pair(a, b, 0.5);
  CHECK((mid.entries() - 2.0 * Matrix::Identity(2, 2)).norm() < 1e-12);
  CHECK((weighted_geometric_pair(a, b, 0.0).entries() - da).norm() < 1e-12);
  CHECK((weighted_geometric_pair(a, b, 1.0).entries() - db).norm() < 1e-12);
  // scalar case: a #_t b = a^{1-t} b^t
  const PositiveDefiniteMatrix sa(Matrix(3.0 * Matrix::Identity(1, 1)));
  const PositiveDefiniteMatrix sb(Matrix(12.0 * Matrix::Identity(1, 1)));
  CHECK(weighted_geometric_pair(sa, sb, 0.25).entries()(0, 0).real() ==
        doctest::Approx(std::pow(3.0, 0.75) * std::pow(12.0, 0.25)).epsilon(1e-13));
  CHECK_THROWS_AS(weighted_geometric_pair(a, b, 1.5), RangeError);
}

TEST_CASE("bounds and intervals validate") {
  CHECK_THROWS_AS(SpectrumBounds(2.0, 1.0), RangeError);
  CHECK_THROWS_AS(SpectrumBounds(0.0, 1.0), RangeError);
  CHECK(SpectrumBounds(2.0, 6.0).h() == doctest::Approx(3.0));
}

TEST_CASE("fingerprints are stable and discriminating") {
  const HermitianMatrix h1 = random_hermitian(3, 7);
  const HermitianMatrix h2 = random_hermitian(3, 8);
  CHECK(matrix_fingerprint(h1.entries()) == matrix_fingerprint(h1.entries()));
  CHECK(matrix_fingerprint(h1.entries()) != matrix_fingerprint(h2.entries()));
}

TEST_CASE("loewner margin agrees with a direct eigenvalue oracle") {
  const PositiveDefiniteMatrix a = random_pd(4, 41);
  const PositiveDefiniteMatrix b = random_pd(4, 42);
  const LoewnerVerdict v = loewner_leq(a.base(), b.base());
  CHECK(v.margin == doctest::Approx(min_eig(b.entries() - a.entries())).epsilon(1e-12));
}
