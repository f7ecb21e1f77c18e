#include "vna/random.hpp"

#include <numbers>

#include "vna/spectral.hpp"

namespace vna {

Element Sampler::element(const FdAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) {
    Matrix m(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) m(i, j) = Complex(normal(), normal());
    blocks.push_back(std::move(m));
  }
  return {algebra, std::move(blocks)};
}

Element Sampler::hermitian(const FdAlgebra& algebra) { return hermitian_part(element(algebra)); }

Element Sampler::hermitian_with_norm(const FdAlgebra& algebra, double norm) {
  Element h = hermitian(algebra);
  const double n = h.norm();
  return n == 0.0 ? h : (norm / n) * h;
}

Element Sampler::unitary(const FdAlgebra& algebra) {
  return unitary_exp(hermitian_with_norm(algebra, std::numbers::pi), 1.0);
}

}  // namespace vna
