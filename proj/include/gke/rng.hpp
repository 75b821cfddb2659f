#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace gke {

// Mixes (seed, stream) into a single 64-bit state. Used to key independent
// per-trial streams so concurrent evaluation stays reproducible.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

std::uint64_t fnv1a(const void* data, std::size_t bytes);
std::uint64_t fnv1a(const std::string& s);

// Deterministic draws on top of mt19937_64. Gaussian and simplex samples are
// generated from raw uniforms instead of std distributions, whose sequences
// are not pinned down by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  std::uint64_t uniform_index(std::uint64_t n);  // [0, n)
  double gaussian();
  std::complex<double> complex_gaussian();

  // Dirichlet(1,...,1): strictly positive weights summing to 1.
  std::vector<double> simplex_weights(int n);

  Eigen::MatrixXcd unitary(int k);
  Eigen::VectorXcd unit_vector(int k);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gke
