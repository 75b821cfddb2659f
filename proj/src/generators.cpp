#include "gke/generators.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace gke {

namespace {

constexpr double kMinPowerParameter = 1e-8;

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("could not parse " + what + " from '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

Generator Generator::make_log() { return Generator(Tag::log, 0.0); }

Generator Generator::make_power(double t) {
  if (!(t >= -1.0) || !(t <= 1.0)) throw RangeError("power generator: t must lie in [-1, 1]");
  if (std::abs(t) < kMinPowerParameter)
    throw RangeError("power generator: |t| < 1e-8; use the log generator for the t -> 0 limit");
  return Generator(Tag::power, t);
}

Generator Generator::make_affine() { return Generator(Tag::affine, 1.0); }

Generator Generator::make_harmonic() { return Generator(Tag::harmonic, -1.0); }

Generator Generator::parse(const std::string& spec) {
  if (spec == "log") return make_log();
  if (spec == "affine") return make_affine();
  if (spec == "harmonic") return make_harmonic();
  const std::string prefix = "power:";
  if (spec.rfind(prefix, 0) == 0) return make_power(parse_double(spec.substr(prefix.size()), "power exponent"));
  throw ValidationError("unknown generator '" + spec + "' (expected log, affine, harmonic, or power:T)");
}

double Generator::eval(double x) const {
  if (!(x > 0.0)) throw DomainError("generator: argument must be positive, got " + std::to_string(x));
  switch (tag_) {
    case Tag::log:
      return std::log(x);
    case Tag::affine:
      return x - 1.0;
    case Tag::harmonic:
      return 1.0 - 1.0 / x;
    case Tag::power:
      // (x^t - 1)/t evaluated as expm1(t log x)/t to stay accurate near x = 1
      return std::expm1(t_ * std::log(x)) / t_;
  }
  throw Error("generator: unreachable tag");
}

double Generator::power_parameter() const {
  if (tag_ == Tag::log) throw RangeError("log generator has no power parameter");
  return t_;
}

std::string Generator::name() const {
  switch (tag_) {
    case Tag::log:
      return "log";
    case Tag::affine:
      return "affine";
    case Tag::harmonic:
      return "harmonic";
    case Tag::power: {
      std::ostringstream os;
      os << "power:" << t_;
      return os.str();
    }
  }
  return "?";
}

Generator Generator::deformed(double p) const {
  if (!(p >= 1.0)) throw RangeError("deformation requires p >= 1");
  if (p == 1.0) return *this;
  if (tag_ == Tag::log) return *this;
  const double t = t_ / p;
  if (std::abs(t) < kMinPowerParameter)
    throw RangeError("deformation pushes the power exponent below 1e-8; use the log generator");
  return Generator(Tag::power, t);
}

Generator make_generator(Generator::Tag tag, std::optional<double> parameter) {
  switch (tag) {
    case Generator::Tag::log:
      return Generator::make_log();
    case Generator::Tag::affine:
      return Generator::make_affine();
    case Generator::Tag::harmonic:
      return Generator::make_harmonic();
    case Generator::Tag::power:
      if (!parameter) throw RangeError("power generator needs a parameter");
      return Generator::make_power(*parameter);
  }
  throw Error("make_generator: unreachable tag");
}

Generator deform_generator(const Generator& g, double p) { return g.deformed(p); }

double kantorovich_constant(double h) {
  if (!(h >= 1.0)) throw RangeError("kantorovich_constant: need h >= 1, got " + std::to_string(h));
  return (h + 1.0) * (h + 1.0) / (4.0 * h);
}

double generalized_kantorovich(double m, double M, double p) {
  if (!(m > 0.0) || !(M > m)) throw RangeError("generalized_kantorovich: need 0 < m < M");
  if (!(p >= 1.0)) throw RangeError("generalized_kantorovich: need p >= 1");
  if (p == 1.0) return 1.0;
  const double Mp = std::pow(M, p);
  const double mp = std::pow(m, p);
  const double a = m * Mp - M * mp;  // positive for p > 1
  const double front = a / ((p - 1.0) * (M - m));
  const double inner = ((p - 1.0) / p) * (Mp - mp) / a;
  return front * std::pow(inner, p);
}

double mu_constant(double m, double M, const ScalarFunction& f, const ScalarFunction& g) {
  if (!(m > 0.0) || !(M > m)) throw RangeError("mu_constant: need 0 < m < M");
  const double fm = f(m);
  const double fM = f(M);
  const auto objective = [&](double t) {
    const double gt = g(t);
    if (!(gt > 0.0)) throw DomainError("mu_constant: g is not strictly positive at t = " + std::to_string(t));
    return (((M - t) * fm + (t - m) * fM) / (M - m)) / gt;
  };

  constexpr int kGrid = 1024;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double t = m + (M - m) * static_cast<double>(i) / (kGrid - 1);
    const double v = objective(t);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  // golden-section refinement on the bracket around the best grid point
  const double step = (M - m) / (kGrid - 1);
  double lo = std::max(m, m + (best - 1) * step);
  double hi = std::min(M, m + (best + 1) * step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = objective(c);
  double fd = objective(d);
  while (hi - lo > 1e-10) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = objective(d);
    }
  }
  return std::max({best_value, fc, fd});
}

PositiveDefiniteMatrix refinement_midpoint(const SpectrumBounds& bounds, const PositiveDefiniteMatrix& a) {
  const HermitianMatrix lower(bounds.m * Matrix::Identity(a.dim(), a.dim()));
  const HermitianMatrix upper(bounds.M * Matrix::Identity(a.dim(), a.dim()));
  if (!loewner_leq(lower, a.base()).holds || !loewner_leq(a.base(), upper).holds) {
    std::ostringstream os;
    os << "refinement_midpoint: spectrum escapes [" << bounds.m << ", " << bounds.M << "] (eig_min=" << a.eig_min()
       << ")";
    throw DomainError(os.str());
  }
  const double m = bounds.m;
  const double M = bounds.M;
  const double denom = 1.0 / m - 1.0 / M;
  const double log_m = std::log(m);
  const double log_M = std::log(M);
  const auto r = [=](double t) {
    const double alpha = (1.0 / m - 1.0 / t) / denom;  // exponent of M
    const double beta = (1.0 / t - 1.0 / M) / denom;   // exponent of m
    return std::exp(alpha * log_M + beta * log_m);
  };
  return PositiveDefiniteMatrix(apply_scalar_function(r, a));
}

double scalar_bound_eq9(double t, double m, double M) {
  if (!(m > 0.0) || !(M > m)) throw RangeError("scalar_bound_eq9: need 0 < m < M");
  if (!(t >= m) || !(t <= M)) throw RangeError("scalar_bound_eq9: t must lie in [m, M]");
  const double mix = ((t - m) * std::log(m) + (M - t) * std::log(M)) / (M - m);
  return t + std::exp(mix);
}

MonotoneFunction::MonotoneFunction(Tag tag, double p0, double p1, double p2, double p3)
    : tag_(tag), p0_(p0), p1_(p1), p2_(p2), p3_(p3) {
  validate_sampled();
}

MonotoneFunction MonotoneFunction::make_power(double s) {
  if (!(s > 0.0) || !(s <= 1.0)) throw RangeError("monotone power: exponent must lie in (0, 1]");
  return MonotoneFunction(Tag::power, s, 0, 0, 0);
}

MonotoneFunction MonotoneFunction::make_inverse_power(double s) {
  if (!(s > 0.0) || !(s <= 1.0)) throw RangeError("monotone inverse power: exponent must lie in (0, 1]");
  return MonotoneFunction(Tag::inverse_power, s, 0, 0, 0);
}

MonotoneFunction MonotoneFunction::make_shift_inverse(double c) {
  if (!(c > 0.0)) throw RangeError("monotone shift inverse: shift must be positive");
  return MonotoneFunction(Tag::shift_inverse, c, 0, 0, 0);
}

MonotoneFunction MonotoneFunction::make_moebius(double a, double b, double c, double d) {
  if (a < 0.0 || b < 0.0 || c < 0.0 || d < 0.0) throw RangeError("moebius: coefficients must be nonnegative");
  if (!(a * d - b * c > 0.0)) throw RangeError("moebius: need a*d - b*c > 0 for strict increase");
  if (a + b <= 0.0 || c + d <= 0.0) throw RangeError("moebius: degenerate coefficients");
  return MonotoneFunction(Tag::moebius, a, b, c, d);
}

double MonotoneFunction::eval(double x) const {
  if (!(x > 0.0)) throw DomainError("monotone function: argument must be positive");
  switch (tag_) {
    case Tag::power:
      return std::pow(x, p0_);
    case Tag::inverse_power:
      return std::pow(x, -p0_);
    case Tag::shift_inverse:
      return 1.0 / (x + p0_);
    case Tag::moebius:
      return (p0_ * x + p1_) / (p2_ * x + p3_);
  }
  throw Error("monotone function: unreachable tag");
}

MonotoneFunction::Direction MonotoneFunction::direction() const {
  switch (tag_) {
    case Tag::power:
    case Tag::moebius:
      return Direction::increasing;
    case Tag::inverse_power:
    case Tag::shift_inverse:
      return Direction::decreasing;
  }
  throw Error("monotone function: unreachable tag");
}

std::string MonotoneFunction::name() const {
  std::ostringstream os;
  switch (tag_) {
    case Tag::power:
      os << "monotone:power:" << p0_;
      break;
    case Tag::inverse_power:
      os << "monotone:inv:" << p0_;
      break;
    case Tag::shift_inverse:
      os << "monotone:shiftinv:" << p0_;
      break;
    case Tag::moebius:
      os << "monotone:moebius:" << p0_ << "," << p1_ << "," << p2_ << "," << p3_;
      break;
  }
  return os.str();
}

ScalarFunction MonotoneFunction::as_function() const {
  return [copy = *this](double x) { return copy.eval(x); };
}

void MonotoneFunction::validate_sampled() const {
  // positivity and direction spot-checked on a log-spaced grid
  double prev = 0.0;
  bool first = true;
  const Direction dir = direction();
  for (int i = 0; i <= 32; ++i) {
    const double x = std::exp(-4.0 + 8.0 * i / 32.0);
    const double y = eval(x);
    if (!(y > 0.0) || !std::isfinite(y))
      throw RangeError("monotone function: not strictly positive at x = " + std::to_string(x));
    if (!first) {
      const bool ok = dir == Direction::increasing ? y > prev : y < prev;
      if (!ok) throw RangeError("monotone function: direction violated near x = " + std::to_string(x));
    }
    prev = y;
    first = false;
  }
}

MonotoneFunction MonotoneFunction::parse(const std::string& spec) {
  std::string body = spec;
  const std::string prefix = "monotone:";
  if (body.rfind(prefix, 0) == 0) body = body.substr(prefix.size());
  const auto parts = split(body, ':');
  if (parts.size() == 2 && parts[0] == "power") return make_power(parse_double(parts[1], "monotone power exponent"));
  if (parts.size() == 2 && parts[0] == "inv")
    return make_inverse_power(parse_double(parts[1], "monotone inverse exponent"));
  if (parts.size() == 2 && parts[0] == "shiftinv")
    return make_shift_inverse(parse_double(parts[1], "monotone shift"));
  if (parts.size() == 2 && parts[0] == "moebius") {
    const auto coeffs = split(parts[1], ',');
    if (coeffs.size() != 4) throw ValidationError("moebius needs four coefficients a,b,c,d");
    return make_moebius(parse_double(coeffs[0], "moebius a"), parse_double(coeffs[1], "moebius b"),
                        parse_double(coeffs[2], "moebius c"), parse_double(coeffs[3], "moebius d"));
  }
  throw ValidationError("unknown monotone function '" + spec + "'");
}

ChordData::ChordData(double m, double M, ScalarFunction f) : m_(m), M_(M), f_(std::move(f)) {
  if (!(m > 0.0) || !(M > m)) throw RangeError("ChordData: need 0 < m < M");
  fm_ = f_(m);
  fM_ = f_(M);
  if (!std::isfinite(fm_) || !std::isfinite(fM_)) throw DomainError("ChordData: f not finite at an endpoint");
  for (int i = 0; i <= 64; ++i) {
    const double t = m_ + (M_ - m_) * i / 64.0;
    if (f_(t) > chord(t) + 1e-9 * (1.0 + std::abs(chord(t))))
      throw DomainError("ChordData: f exceeds its chord at t = " + std::to_string(t) + "; function is not convex here");
  }
}

double ChordData::chord(double t) const { return ((M_ - t) * fm_ + (t - m_) * fM_) / (M_ - m_); }

}  // namespace gke
