#pragma once

#include <complex>
#include <vector>

#include "vna/algebra.hpp"

namespace vna::testing {

inline FdAlgebra m2() { return FdAlgebra({2}); }

inline Element mat2(const FdAlgebra& m, Complex a, Complex b, Complex c, Complex d) {
  Matrix x(2, 2);
  x << a, b, c, d;
  return Element(m, {x});
}

inline Element sx(const FdAlgebra& m = m2()) { return mat2(m, 0, 1, 1, 0); }
inline Element sy(const FdAlgebra& m = m2()) { return mat2(m, 0, Complex(0, -1), Complex(0, 1), 0); }
inline Element sz(const FdAlgebra& m = m2()) { return mat2(m, 1, 0, 0, -1); }
inline Element one(const FdAlgebra& m = m2()) { return Element::identity(m); }

// Elementwise 2x2 product written out by hand; independent of Eigen's products.
inline Element hand_product_2x2(const Element& x, const Element& y) {
  const Matrix& a = x.block(0);
  const Matrix& b = y.block(0);
  Matrix c(2, 2);
  c(0, 0) = a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0);
  c(0, 1) = a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1);
  c(1, 0) = a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0);
  c(1, 1) = a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1);
  return Element(x.algebra(), {c});
}

inline std::vector<FdAlgebra> catalog_algebras() {
  return {FdAlgebra({2}), FdAlgebra({3}), FdAlgebra({2, 3}), FdAlgebra({1, 1}),
          FdAlgebra({2, 2}), FdAlgebra({1, 2}), FdAlgebra({2, 3, 2})};
}

}  // namespace vna::testing
