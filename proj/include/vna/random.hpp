#pragma once

#include <cstdint>
#include <random>

#include "vna/algebra.hpp"

namespace vna {

/// Gaussian samples of algebra elements; all randomness in a session flows
/// through one of these.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double normal() { return normal_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Element element(const FdAlgebra& algebra);
  Element hermitian(const FdAlgebra& algebra);
  /// Hermitian with Frobenius norm `norm`.
  Element hermitian_with_norm(const FdAlgebra& algebra, double norm);
  /// e^{ih} for a random Hermitian h of norm ~π; generic, far from the identity.
  Element unitary(const FdAlgebra& algebra);

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace vna
