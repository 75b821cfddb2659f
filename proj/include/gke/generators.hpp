#pragma once

#include <optional>
#include <string>

#include "gke/hermitian.hpp"

namespace gke {

/// Mean generator: operator monotone on (0, inf) with g(1) = 0, g'(1) = 1.
/// Catalog: log x, (x^t - 1)/t for t in [-1,1]\{0}, x - 1, 1 - 1/x.
class Generator {
 public:
  enum class Tag { log, power, affine, harmonic };

  static Generator make_log();
  static Generator make_power(double t);
  static Generator make_affine();
  static Generator make_harmonic();

  /// "log", "affine", "harmonic", "power:0.5"
  static Generator parse(const std::string& spec);

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  Tag tag() const { return tag_; }
  /// Exponent as actually evaluated: 1 for affine, -1 for harmonic, t for
  /// power. Asking the log generator for one is an error.
  double power_parameter() const;
  double deriv_at_one() const { return 1.0; }
  std::string name() const;

  /// g_p(x) = p * g(x^{1/p}) for p >= 1. Stays inside the catalog: log is a
  /// fixed point and power exponents divide by p.
  Generator deformed(double p) const;

 private:
  Generator(Tag tag, double t) : tag_(tag), t_(t) {}
  Tag tag_;
  double t_;
};

Generator make_generator(Generator::Tag tag, std::optional<double> parameter = std::nullopt);
Generator deform_generator(const Generator& g, double p);

/// (h + 1)^2 / (4h) for h >= 1.
double kantorovich_constant(double h);

/// Generalized constant K(m, M, p) for 0 < m < M, p >= 1; p = 1 is the limit
/// value 1. K(m, M, 2) coincides with kantorovich_constant(M/m).
double generalized_kantorovich(double m, double M, double p);

/// max over [m, M] of chord_f(t) / g(t) where chord_f is the secant of f
/// through (m, f(m)), (M, f(M)). Dense grid plus golden-section refinement;
/// g must be strictly positive on [m, M].
double mu_constant(double m, double M, const ScalarFunction& f, const ScalarFunction& g);

/// Spectral application of r(t) = M^{(1/m - 1/t)/(1/m - 1/M)} *
/// m^{(1/t - 1/M)/(1/m - 1/M)}; requires m I <= A <= M I. Interpolates the
/// endpoints: r(m) = m, r(M) = M.
PositiveDefiniteMatrix refinement_midpoint(const SpectrumBounds& bounds, const PositiveDefiniteMatrix& a);

/// t + m^{(t-m)/(M-m)} M^{(M-t)/(M-m)}, bounded by M + m on [m, M].
double scalar_bound_eq9(double t, double m, double M);

/// Operator monotone scalar function used by the order-reversal checks.
class MonotoneFunction {
 public:
  enum class Tag { power, inverse_power, shift_inverse, moebius };
  enum class Direction { increasing, decreasing };

  static MonotoneFunction make_power(double s);          // x^s, s in (0,1]
  static MonotoneFunction make_inverse_power(double s);  // x^{-s}, s in (0,1]
  static MonotoneFunction make_shift_inverse(double c);  // 1/(x+c), c > 0
  static MonotoneFunction make_moebius(double a, double b, double c, double d);

  /// "monotone:power:0.5", "monotone:inv:1.0", "monotone:shiftinv:2.0",
  /// "monotone:moebius:a,b,c,d"; the prefix may be dropped.
  static MonotoneFunction parse(const std::string& spec);

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }
  Tag tag() const { return tag_; }
  Direction direction() const;
  std::string name() const;
  ScalarFunction as_function() const;

 private:
  MonotoneFunction(Tag tag, double p0, double p1, double p2, double p3);
  void validate_sampled() const;
  Tag tag_;
  double p0_, p1_, p2_, p3_;
};

/// Secant data of a scalar function on [m, M]. Construction spot-checks
/// convexity (f <= chord on a sample grid).
class ChordData {
 public:
  ChordData(double m, double M, ScalarFunction f);
  double m() const { return m_; }
  double M() const { return M_; }
  double f(double t) const { return f_(t); }
  double chord(double t) const;

 private:
  double m_, M_;
  ScalarFunction f_;
  double fm_, fM_;
};

}  // namespace gke
