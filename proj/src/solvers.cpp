#include "gke/solvers.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "gke/log.hpp"

namespace gke {

namespace {

double effective_tolerance(const SolveOptions& opts, int k) {
  const double tol = opts.tol > 0.0 ? opts.tol : 1e-11 * k;
  if (!std::isfinite(tol)) throw RangeError("solver tolerance must be finite");
  return tol;
}

struct SqrtPair {
  Matrix sqrt;
  Matrix inv_sqrt;
};

SqrtPair sqrt_pair(const PositiveDefiniteMatrix& x) {
  const EigenSystem es = eigendecompose(x.base());
  const int k = x.dim();
  RealVector rt(k), irt(k);
  for (int i = 0; i < k; ++i) {
    rt(i) = std::sqrt(es.eigenvalues(i));
    irt(i) = 1.0 / rt(i);
  }
  return {es.vectors * rt.asDiagonal() * es.vectors.adjoint(), es.vectors * irt.asDiagonal() * es.vectors.adjoint()};
}

ScalarFunction generator_function(const Generator& g) {
  return [g](double u) { return g.eval(u); };
}

// whitened residual sum_i w_i g(X^{-1/2} A_i X^{-1/2}) and its norm
struct Residual {
  HermitianMatrix matrix;
  double norm;
};

Residual whitened_residual(const MatrixEnsemble& e, const Generator& g, const Matrix& inv_sqrt) {
  const int k = e.dim();
  Matrix acc = Matrix::Zero(k, k);
  const ScalarFunction gf = generator_function(g);
  for (int i = 0; i < e.size(); ++i) {
    const HermitianMatrix whitened(inv_sqrt * e.matrix(i).entries() * inv_sqrt);
    acc += e.weight(i) * apply_scalar_function(gf, whitened, positive_axis()).entries();
  }
  HermitianMatrix r(acc);
  const double norm = frobenius_norm(r);
  return {std::move(r), norm};
}

PositiveDefiniteMatrix certify_iterate(const Matrix& raw) {
  try {
    return PositiveDefiniteMatrix(HermitianMatrix(raw));
  } catch (const DomainError& err) {
    throw EigensolverError(std::string("solver iterate lost positive definiteness: ") + err.what());
  }
}

// one application of the power-mean map G(X) = sum_i w_i (X #_t A_i)
PositiveDefiniteMatrix power_map(const MatrixEnsemble& e, double t, const PositiveDefiniteMatrix& x) {
  const int k = e.dim();
  Matrix acc = Matrix::Zero(k, k);
  for (int i = 0; i < e.size(); ++i)
    acc += e.weight(i) * weighted_geometric_pair(x, e.matrix(i), t).entries();
  return PositiveDefiniteMatrix(HermitianMatrix(acc));
}

RealVector vectorize(const Matrix& m) {
  const Eigen::Index n = m.size();
  RealVector v(2 * n);
  const Complex* data = m.data();
  for (Eigen::Index i = 0; i < n; ++i) {
    v(2 * i) = data[i].real();
    v(2 * i + 1) = data[i].imag();
  }
  return v;
}

Matrix unvectorize(const RealVector& v, int k) {
  Matrix m(k, k);
  Complex* data = m.data();
  for (Eigen::Index i = 0; i < m.size(); ++i) data[i] = Complex(v(2 * i), v(2 * i + 1));
  return m;
}

}  // namespace

PositiveDefiniteMatrix arithmetic_mean(const MatrixEnsemble& e) {
  const int k = e.dim();
  Matrix acc = Matrix::Zero(k, k);
  for (int i = 0; i < e.size(); ++i) acc += e.weight(i) * e.matrix(i).entries();
  return PositiveDefiniteMatrix(HermitianMatrix(acc));
}

PositiveDefiniteMatrix harmonic_mean(const MatrixEnsemble& e) {
  const int k = e.dim();
  Matrix acc = Matrix::Zero(k, k);
  for (int i = 0; i < e.size(); ++i) acc += e.weight(i) * pd_inverse(e.matrix(i)).entries();
  return pd_inverse(PositiveDefiniteMatrix(HermitianMatrix(acc)));
}

double gke_residual(const MatrixEnsemble& e, const Generator& g, const PositiveDefiniteMatrix& x) {
  if (x.dim() != e.dim()) throw DimensionError("gke_residual: dimension mismatch");
  return whitened_residual(e, g, sqrt_pair(x).inv_sqrt).norm;
}

SolveReport solve_gke(const MatrixEnsemble& e, const Generator& g, const SolveOptions& opts) {
  if (!(opts.step > 0.0) || !(opts.step <= 1.0)) throw RangeError("solve_gke: step must lie in (0, 1]");
  if (opts.max_iter < 0) throw RangeError("solve_gke: max_iter must be nonnegative");
  const int k = e.dim();
  const double tau = effective_tolerance(opts, k);
  constexpr int kWindow = 4;

  PositiveDefiniteMatrix x = opts.initial ? *opts.initial : arithmetic_mean(e);
  if (x.dim() != k) throw DimensionError("solve_gke: initial iterate dimension mismatch");
  SqrtPair xs = sqrt_pair(x);
  Residual res = whitened_residual(e, g, xs.inv_sqrt);

  std::deque<RealVector> hist_g;  // vectorized exp-update outputs
  std::deque<RealVector> hist_f;  // vectorized update displacements

  int iterations = 0;
  int restarts = 0;
  bool converged = false;
  bool stalled = false;

  while (true) {
    if (res.norm <= tau) {
      converged = true;
      break;
    }
    if (iterations >= opts.max_iter) break;

    const EigenSystem er = eigendecompose(res.matrix);
    const auto exp_candidate = [&](double s) {
      RealVector expd(k);
      for (int i = 0; i < k; ++i) expd(i) = std::exp(s * er.eigenvalues(i));
      const Matrix stepm = er.vectors * expd.asDiagonal() * er.vectors.adjoint();
      return certify_iterate(xs.sqrt * stepm * xs.sqrt);
    };

    const PositiveDefiniteMatrix plain = exp_candidate(opts.step);
    const RealVector vx = vectorize(x.entries());
    const RealVector vg = vectorize(plain.entries());
    hist_g.push_back(vg);
    hist_f.push_back(vg - vx);
    while (static_cast<int>(hist_f.size()) > kWindow + 1) {
      hist_g.pop_front();
      hist_f.pop_front();
    }

    bool accepted = false;

    // secant extrapolation over the recent window; kept only when it stays
    // positive definite and strictly improves the residual, so the damped
    // update below remains the worst case
    const int m = static_cast<int>(hist_f.size()) - 1;
    if (m >= 1) {
      Eigen::MatrixXd df(vx.size(), m);
      Eigen::MatrixXd dg(vx.size(), m);
      for (int j = 0; j < m; ++j) {
        df.col(j) = hist_f[static_cast<std::size_t>(j + 1)] - hist_f[static_cast<std::size_t>(j)];
        dg.col(j) = hist_g[static_cast<std::size_t>(j + 1)] - hist_g[static_cast<std::size_t>(j)];
      }
      const Eigen::VectorXd gamma = df.colPivHouseholderQr().solve(hist_f.back());
      const RealVector accel = vg - dg * gamma;
      if (accel.allFinite()) {
        const Matrix raw = unvectorize(accel, k);
        const HermitianMatrix cand(0.5 * (raw + raw.adjoint()));
        const EigenSystem es = eigendecompose(cand);
        if (es.eigenvalues(0) > 0.0) {
          const PositiveDefiniteMatrix candp(cand);
          const SqrtPair cand_s = sqrt_pair(candp);
          const Residual cand_res = whitened_residual(e, g, cand_s.inv_sqrt);
          if (cand_res.norm < res.norm) {
            x = candp;
            xs = cand_s;
            res = cand_res;
            accepted = true;
          }
        }
      }
      if (!accepted) {
        hist_g.clear();
        hist_f.clear();
        hist_g.push_back(vg);
        hist_f.push_back(vg - vx);
        ++restarts;
      }
    }

    if (!accepted) {
      double s = opts.step;
      PositiveDefiniteMatrix cand = plain;
      for (int halving = 0; halving <= 12; ++halving) {
        const SqrtPair cand_s = sqrt_pair(cand);
        const Residual cand_res = whitened_residual(e, g, cand_s.inv_sqrt);
        if (cand_res.norm < res.norm) {
          x = cand;
          xs = cand_s;
          res = cand_res;
          accepted = true;
          break;
        }
        ++restarts;
        s *= 0.5;
        cand = exp_candidate(s);
      }
    }
    if (!accepted) {
      stalled = true;
      break;
    }
    ++iterations;
    if (log_level() >= LogLevel::debug) {
      std::ostringstream os;
      os << "gke[" << g.name() << "] iter " << iterations << " residual " << res.norm;
      log_debug(os.str());
    }
  }

  if (stalled && res.norm <= tau) converged = true;
  if (stalled && !converged) {
    std::ostringstream os;
    os << "gke[" << g.name() << "] step underflow at residual " << res.norm;
    log_info(os.str());
  }
  return {x, iterations, res.norm, converged, restarts, tau};
}

SolveReport karcher_mean(const MatrixEnsemble& e, const SolveOptions& opts) {
  return solve_gke(e, Generator::make_log(), opts);
}

namespace {

SolveReport solve_power_mean_positive(const MatrixEnsemble& e, double t, const SolveOptions& opts) {
  const int k = e.dim();
  const double tau = effective_tolerance(opts, k);
  const double step_tol = effective_tolerance(opts, k);
  const Generator g = Generator::make_power(t);
  constexpr int kWindow = 4;

  PositiveDefiniteMatrix x = opts.initial ? *opts.initial : arithmetic_mean(e);
  if (x.dim() != k) throw DimensionError("solve_power_mean: initial iterate dimension mismatch");

  std::deque<RealVector> hist_g;  // vectorized map outputs G(x_j)
  std::deque<RealVector> hist_f;  // vectorized fixed-point residuals G(x_j) - x_j

  int iterations = 0;
  int restarts = 0;
  bool converged = false;
  double residual = gke_residual(e, g, x);
  double prev_fnorm = std::numeric_limits<double>::infinity();

  while (true) {
    const PositiveDefiniteMatrix gx = power_map(e, t, x);
    const RealVector vx = vectorize(x.entries());
    const RealVector vg = vectorize(gx.entries());
    const RealVector f = vg - vx;
    const double fnorm = f.norm();
    const double xnorm = vx.norm();

    if (residual <= tau && fnorm <= step_tol * xnorm) {
      converged = true;
      break;
    }
    if (iterations >= opts.max_iter) break;

    if (fnorm > prev_fnorm && !hist_f.empty()) {
      // extrapolation made the map residual grow; restart the window
      hist_g.clear();
      hist_f.clear();
      ++restarts;
    }
    prev_fnorm = fnorm;

    hist_g.push_back(vg);
    hist_f.push_back(f);
    while (static_cast<int>(hist_f.size()) > kWindow + 1) {
      hist_g.pop_front();
      hist_f.pop_front();
    }

    PositiveDefiniteMatrix next = gx;
    const int m = static_cast<int>(hist_f.size()) - 1;
    if (m >= 1) {
      Eigen::MatrixXd df(f.size(), m);
      Eigen::MatrixXd dg(f.size(), m);
      for (int j = 0; j < m; ++j) {
        df.col(j) = hist_f[j + 1] - hist_f[j];
        dg.col(j) = hist_g[j + 1] - hist_g[j];
      }
      const Eigen::VectorXd gamma = df.colPivHouseholderQr().solve(f);
      const RealVector accel = vg - dg * gamma;
      bool usable = accel.allFinite();
      if (usable) {
        const Matrix raw = unvectorize(accel, k);
        const HermitianMatrix cand(0.5 * (raw + raw.adjoint()));
        const EigenSystem es = eigendecompose(cand);
        if (es.eigenvalues(0) > 0.0) {
          next = PositiveDefiniteMatrix(cand);
        } else {
          usable = false;
        }
      }
      if (!usable) {
        hist_g.clear();
        hist_f.clear();
        hist_g.push_back(vg);
        hist_f.push_back(f);
        ++restarts;
        next = gx;
      }
    }

    x = next;
    residual = gke_residual(e, g, x);
    ++iterations;
    if (log_level() >= LogLevel::debug) {
      std::ostringstream os;
      os << "power[" << t << "] iter " << iterations << " residual " << residual << " map step " << fnorm;
      log_debug(os.str());
    }
  }

  return {x, iterations, residual, converged, restarts, tau};
}

}  // namespace

SolveReport solve_power_mean(const MatrixEnsemble& e, double t, const SolveOptions& opts) {
  if (!(t >= -1.0) || !(t <= 1.0)) throw RangeError("solve_power_mean: t must lie in [-1, 1]");
  if (std::abs(t) < 1e-8) throw RangeError("solve_power_mean: |t| < 1e-8; use the Karcher mean for the limit");
  if (opts.max_iter < 0) throw RangeError("solve_power_mean: max_iter must be nonnegative");
  if (t > 0.0) return solve_power_mean_positive(e, t, opts);

  // negative exponents through the inversion identity
  SolveOptions sub = opts;
  if (opts.initial) sub.initial = pd_inverse(*opts.initial);
  const MatrixEnsemble inv = e.inverted();
  SolveReport inner = solve_power_mean_positive(inv, -t, sub);
  const PositiveDefiniteMatrix x = pd_inverse(inner.solution);
  const double residual = gke_residual(e, Generator::make_power(t), x);
  const bool converged = inner.converged && residual <= inner.tolerance;
  return {x, inner.iterations, residual, converged, inner.restarts, inner.tolerance};
}

double scalar_gke(const std::vector<double>& weights, const std::vector<double>& values, const Generator& g) {
  if (weights.size() != values.size() || values.empty())
    throw DimensionError("scalar_gke: need matching nonempty weights and values");
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw ValidationError("scalar_gke: weights must be strictly positive");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12) throw ValidationError("scalar_gke: weights must sum to 1");
  double lo = values[0], hi = values[0];
  for (double v : values) {
    if (!(v > 0.0)) throw DomainError("scalar_gke: values must be positive");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) return lo;

  const auto phi = [&](double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * g.eval(values[i] / x);
    return acc;
  };
  // phi decreases in x, phi(lo) >= 0 >= phi(hi)
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

HermitianMatrix generator_perspective(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& a,
                                      const Generator& g) {
  if (x.dim() != a.dim()) throw DimensionError("generator_perspective: dimension mismatch");
  const SqrtPair xs = sqrt_pair(x);
  const HermitianMatrix whitened(xs.inv_sqrt * a.entries() * xs.inv_sqrt);
  const HermitianMatrix mapped = apply_scalar_function(generator_function(g), whitened, positive_axis());
  return HermitianMatrix(xs.sqrt * mapped.entries() * xs.sqrt);
}

}  // namespace gke
