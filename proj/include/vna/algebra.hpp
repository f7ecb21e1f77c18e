#pragma once

// Finite direct sums of full complex matrix blocks and their elements.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vna {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr Complex I{0.0, 1.0};

/// M = M_{n1} ⊕ ... ⊕ M_{nk}. Two algebras are the same ambient algebra iff
/// their block dimensions agree; the label is cosmetic.
class FdAlgebra {
 public:
  explicit FdAlgebra(std::vector<int> block_dims, std::string label = {});

  const std::vector<int>& block_dims() const noexcept { return block_dims_; }
  std::size_t num_blocks() const noexcept { return block_dims_.size(); }
  int block_dim(std::size_t j) const { return block_dims_.at(j); }
  const std::string& label() const noexcept { return label_; }

  /// Σ n_j, the size of the block-diagonal matrix carrying an element.
  int matrix_size() const noexcept;
  /// Σ n_j², the complex dimension (= real dimension of the Hermitian part).
  int dimension() const noexcept;

  bool block_is_abelian(std::size_t j) const { return block_dim(j) == 1; }
  bool is_abelian() const noexcept;
  bool has_I2_summand() const noexcept;
  bool is_C_plus_C() const noexcept;

  /// "M2+M3" style name, or the label when one was given.
  std::string name() const;

  friend bool operator==(const FdAlgebra& a, const FdAlgebra& b) noexcept {
    return a.block_dims_ == b.block_dims_;
  }

 private:
  std::vector<int> block_dims_;
  std::string label_;
};

class Element {
 public:
  Element(FdAlgebra algebra, std::vector<Matrix> blocks);

  static Element zero(const FdAlgebra& algebra);
  static Element identity(const FdAlgebra& algebra);
  static Element scalar(const FdAlgebra& algebra, Complex z);
  /// e_{ij} inside block `block`, zero elsewhere.
  static Element matrix_unit(const FdAlgebra& algebra, std::size_t block, int i, int j);
  /// `m` placed in block `block`, zero elsewhere.
  static Element in_block(const FdAlgebra& algebra, std::size_t block, const Matrix& m);

  const FdAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }
  const Matrix& block(std::size_t j) const { return blocks_.at(j); }

  double norm() const;  // Frobenius over all blocks
  Complex trace() const;
  bool is_hermitian(double tol) const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(Complex z);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= -1.0; }
  friend Element operator*(Complex z, Element a) { return a *= z; }
  friend Element operator*(Element a, Complex z) { return a *= z; }

 private:
  FdAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

void require_same_algebra(const Element& a, const Element& b, const char* op);

/// Associative product ab.
Element multiply(const Element& a, const Element& b);
/// a·b = ½(ab + ba).
Element jordan_product(const Element& a, const Element& b);
/// [a, b] = ab − ba.
Element commutator(const Element& a, const Element& b);
Element adjoint(const Element& a);

/// ½(a + a*) and (a − a*)/2i, so that a = hermitian_part(a) + i·imaginary_part(a).
Element hermitian_part(const Element& a);
Element imaginary_part(const Element& a);

/// tr(ab) without forming the product.
Complex trace_pairing(const Element& a, const Element& b);

double distance(const Element& a, const Element& b);
/// Frobenius closeness, relative to max(1, ‖a‖, ‖b‖).
bool close(const Element& a, const Element& b, double tol);
/// The quantity `close` compares against `tol`.
double relative_distance(const Element& a, const Element& b);

/// Real coordinates of hermitian_part(h) in the HermitianBasis ordering.
Eigen::VectorXd hermitian_coordinates(const Element& h);

/// A real basis of M_sa: per block the diagonal units e_ii, then for i<k the
/// pairs (e_ik + e_ki, i(e_ik − e_ki)).
class HermitianBasis {
 public:
  explicit HermitianBasis(const FdAlgebra& algebra);

  const FdAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Element& operator[](std::size_t k) const { return elements_[k]; }

  /// Real coordinates of hermitian_part(h).
  Eigen::VectorXd coordinates(const Element& h) const;
  Element combine(const Eigen::VectorXd& coords) const;

 private:
  FdAlgebra algebra_;
  std::vector<Element> elements_;
};

/// A central projection of M: the sum of the identities of the blocks whose
/// mask bit is set.
class CentralProjection {
 public:
  CentralProjection(FdAlgebra algebra, std::vector<bool> mask);

  static CentralProjection unit(const FdAlgebra& algebra);
  static CentralProjection zero(const FdAlgebra& algebra);
  /// Recognizes c as a central projection: every block ≈ 0 or ≈ 1.
  static CentralProjection from_element(const Element& c, double tol);
  /// Bit j of `bits` selects block j.
  static CentralProjection from_bits(const FdAlgebra& algebra, unsigned long bits);

  const FdAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<bool>& mask() const noexcept { return mask_; }
  bool operator[](std::size_t j) const { return mask_.at(j); }

  Element element() const;
  /// z = 2c − 1, the associated central symmetry.
  Element symmetry() const;
  /// +1 or −1 on block j.
  double sign(std::size_t j) const { return mask_.at(j) ? 1.0 : -1.0; }

  bool is_unit() const noexcept;
  bool is_zero() const noexcept;

  friend bool operator==(const CentralProjection& a, const CentralProjection& b) {
    return a.algebra_ == b.algebra_ && a.mask_ == b.mask_;
  }

 private:
  FdAlgebra algebra_;
  std::vector<bool> mask_;
};

/// All 2^k central projections, ordered by their bitmask value.
std::vector<CentralProjection> central_projections(const FdAlgebra& algebra);

/// a ⋆ b = c·ab + (1 − c)·ba.
Element twisted_multiply(const Element& a, const Element& b, const CentralProjection& c);

}  // namespace vna
