#pragma once

#include <vector>

#include "vna/algebra.hpp"

namespace vna {

/// Eigenpairs of one Hermitian block: columns of `vectors` are orthonormal
/// eigenvectors, `values` ascending.
struct BlockEigensystem {
  Eigen::VectorXd values;
  Matrix vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi on a complex Hermitian matrix. Stops once the off-diagonal
/// Frobenius mass drops below 1e-12·‖a‖_F. Degenerate eigenvalues keep the
/// order the sweeps leave them in.
BlockEigensystem jacobi_eigh(const Matrix& a);

struct HermitianEigensystem {
  FdAlgebra algebra;
  std::vector<BlockEigensystem> blocks;

  /// Σ_j U_j diag(f(λ)) U_j*.
  template <typename F>
  Element apply_function(F&& f) const {
    std::vector<Matrix> out;
    for (const auto& b : blocks) {
      Eigen::VectorXcd d(b.values.size());
      for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(b.values(i));
      out.push_back(b.vectors * d.asDiagonal() * b.vectors.adjoint());
    }
    return {algebra, std::move(out)};
  }

  Element reconstruct() const;
};

/// Throws a domain error unless `a` is Hermitian to `tol`.
HermitianEigensystem hermitian_eig(const Element& a, double tol = 1e-9);

/// e^{isa} for Hermitian a.
Element unitary_exp(const Element& a, double s, double tol = 1e-9);

bool is_unitary(const Element& u, double tol);
bool is_projection(const Element& p, double tol);

}  // namespace vna
