#include "vna/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vna/error.hpp"

namespace vna {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_mass(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

BlockEigensystem jacobi_eigh(const Matrix& input) {
  const Eigen::Index n = input.rows();
  Matrix a = 0.5 * (input + input.adjoint());
  Matrix v = Matrix::Identity(n, n);
  const double threshold = 1e-12 * a.norm();

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal_mass(a) > threshold; ++sweep) {
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        // Phase e^{-iφ} on column q makes a_pq real, then a real rotation
        // annihilates it. J = diag(1, e^{-iφ}) · [[c, s], [-s, c]].
        const Complex phase = std::conj(a(p, q)) / r;  // e^{-iφ}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const Complex jpp = c, jpq = s, jqp = -s * phase, jqq = c * phase;
        // a ← a J, v ← v J
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        // a ← J* a
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (off_diagonal_mass(a) > threshold)
    throw numeric_error("Jacobi eigensolver did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() < a(y, y).real();
  });

  BlockEigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.values(i) = a(src, src).real();
    out.vectors.col(i) = v.col(src);
  }
  out.sweeps = sweep;
  return out;
}

Element HermitianEigensystem::reconstruct() const {
  return apply_function([](double x) { return Complex(x, 0.0); });
}

HermitianEigensystem hermitian_eig(const Element& a, double tol) {
  if (!a.is_hermitian(tol)) throw domain_error("hermitian_eig: input is not Hermitian");
  HermitianEigensystem out{a.algebra(), {}};
  for (const auto& b : a.blocks()) out.blocks.push_back(jacobi_eigh(b));
  return out;
}

Element unitary_exp(const Element& a, double s, double tol) {
  if (!a.is_hermitian(tol)) throw domain_error("unitary_exp: generator is not Hermitian");
  if (s == 0.0) return Element::identity(a.algebra());
  return hermitian_eig(a, tol).apply_function([s](double x) { return std::exp(I * (s * x)); });
}

bool is_unitary(const Element& u, double tol) {
  return close(multiply(u, adjoint(u)), Element::identity(u.algebra()), tol);
}

bool is_projection(const Element& p, double tol) {
  return p.is_hermitian(tol) && close(multiply(p, p), p, tol);
}

}  // namespace vna
