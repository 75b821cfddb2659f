#include "gke/rng.hpp"

#include <cmath>
#include <string>

#include "gke/errors.hpp"

namespace gke {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

std::uint64_t fnv1a(const void* data, std::size_t bytes) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : gen_(mix_seed(seed, stream)) {}

double Rng::uniform() {
  // 53 uniformly random mantissa bits in [0,1)
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw RangeError("uniform_index: empty range");
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0,1] uniforms; 1-u avoids log(0)
  const double u = 1.0 - uniform();
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * M_PI * v;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

std::complex<double> Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

std::vector<double> Rng::simplex_weights(int n) {
  if (n < 1) throw RangeError("simplex_weights: need n >= 1");
  std::vector<double> w(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (auto& wi : w) {
    wi = -std::log(1.0 - uniform());
    if (wi <= 0.0) wi = 1e-300;
    sum += wi;
  }
  for (auto& wi : w) wi /= sum;
  // second pass flushes accumulated rounding so the sum is 1 to machine precision
  double sum2 = 0.0;
  for (double wi : w) sum2 += wi;
  for (auto& wi : w) wi /= sum2;
  return w;
}

Eigen::MatrixXcd Rng::unitary(int k) {
  if (k < 1) throw RangeError("unitary: need k >= 1");
  Eigen::MatrixXcd g(k, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) g(i, j) = complex_gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(k, k);
  Eigen::MatrixXcd r = qr.matrixQR().template triangularView<Eigen::Upper>();
  // fix column phases so the factorization (and hence q) is unique
  for (int j = 0; j < k; ++j) {
    const std::complex<double> d = r(j, j);
    const double a = std::abs(d);
    const std::complex<double> phase = (a > 0.0) ? d / a : std::complex<double>(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

Eigen::VectorXcd Rng::unit_vector(int k) {
  if (k < 1) throw RangeError("unit_vector: need k >= 1");
  Eigen::VectorXcd x(k);
  for (int i = 0; i < k; ++i) x(i) = complex_gaussian();
  const double norm = x.norm();
  if (norm == 0.0) {
    x.setZero();
    x(0) = 1.0;
    return x;
  }
  return x / norm;
}

}  // namespace gke
