#include "vna/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "vna/error.hpp"

namespace vna {

FdAlgebra::FdAlgebra(std::vector<int> block_dims, std::string label)
    : block_dims_(std::move(block_dims)), label_(std::move(label)) {
  if (block_dims_.empty()) throw structural_error("algebra needs at least one block");
  for (int n : block_dims_)
    if (n < 1) throw structural_error("block dimensions must be positive");
}

int FdAlgebra::matrix_size() const noexcept {
  return std::accumulate(block_dims_.begin(), block_dims_.end(), 0);
}

int FdAlgebra::dimension() const noexcept {
  int d = 0;
  for (int n : block_dims_) d += n * n;
  return d;
}

bool FdAlgebra::is_abelian() const noexcept {
  return std::all_of(block_dims_.begin(), block_dims_.end(), [](int n) { return n == 1; });
}

bool FdAlgebra::has_I2_summand() const noexcept {
  return std::find(block_dims_.begin(), block_dims_.end(), 2) != block_dims_.end();
}

bool FdAlgebra::is_C_plus_C() const noexcept {
  return block_dims_ == std::vector<int>{1, 1};
}

std::string FdAlgebra::name() const {
  if (!label_.empty()) return label_;
  std::ostringstream os;
  for (std::size_t j = 0; j < block_dims_.size(); ++j) {
    if (j) os << '+';
    if (block_dims_[j] == 1)
      os << 'C';
    else
      os << 'M' << block_dims_[j];
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Element::Element(FdAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (blocks_.size() != algebra_.num_blocks())
    throw structural_error("element has " + std::to_string(blocks_.size()) +
                           " blocks, algebra " + algebra_.name() + " has " +
                           std::to_string(algebra_.num_blocks()));
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    const int n = algebra_.block_dim(j);
    if (blocks_[j].rows() != n || blocks_[j].cols() != n)
      throw structural_error("block " + std::to_string(j) + " must be " + std::to_string(n) +
                             "x" + std::to_string(n));
  }
}

Element Element::zero(const FdAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(Matrix::Zero(n, n));
  return {algebra, std::move(blocks)};
}

Element Element::identity(const FdAlgebra& algebra) { return scalar(algebra, 1.0); }

Element Element::scalar(const FdAlgebra& algebra, Complex z) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(z * Matrix::Identity(n, n));
  return {algebra, std::move(blocks)};
}

Element Element::matrix_unit(const FdAlgebra& algebra, std::size_t block, int i, int j) {
  Element e = zero(algebra);
  e.blocks_.at(block)(i, j) = 1.0;
  return e;
}

Element Element::in_block(const FdAlgebra& algebra, std::size_t block, const Matrix& m) {
  Element e = zero(algebra);
  if (m.rows() != algebra.block_dim(block) || m.cols() != algebra.block_dim(block))
    throw structural_error("matrix does not fit block " + std::to_string(block));
  e.blocks_[block] = m;
  return e;
}

double Element::norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

Complex Element::trace() const {
  Complex s = 0.0;
  for (const auto& b : blocks_) s += b.trace();
  return s;
}

bool Element::is_hermitian(double tol) const {
  double s = 0.0;
  for (const auto& b : blocks_) s += (b - b.adjoint()).squaredNorm();
  return std::sqrt(s) <= tol * std::max(1.0, norm());
}

Element& Element::operator+=(const Element& other) {
  require_same_algebra(*this, other, "addition");
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks_[j] += other.blocks_[j];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_algebra(*this, other, "subtraction");
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks_[j] -= other.blocks_[j];
  return *this;
}

Element& Element::operator*=(Complex z) {
  for (auto& b : blocks_) b *= z;
  return *this;
}

void require_same_algebra(const Element& a, const Element& b, const char* op) {
  if (!(a.algebra() == b.algebra()))
    throw structural_error(std::string(op) + ": elements of " + a.algebra().name() + " and " +
                           b.algebra().name());
}

namespace {

template <typename F>
Element blockwise(const Element& a, const Element& b, const char* op, F&& f) {
  require_same_algebra(a, b, op);
  std::vector<Matrix> out;
  out.reserve(a.blocks().size());
  for (std::size_t j = 0; j < a.blocks().size(); ++j) out.push_back(f(a.block(j), b.block(j)));
  return {a.algebra(), std::move(out)};
}

}  // namespace

Element multiply(const Element& a, const Element& b) {
  return blockwise(a, b, "multiply", [](const Matrix& x, const Matrix& y) -> Matrix { return x * y; });
}

Element jordan_product(const Element& a, const Element& b) {
  return blockwise(a, b, "jordan_product", [](const Matrix& x, const Matrix& y) -> Matrix {
    return 0.5 * (x * y + y * x);
  });
}

Element commutator(const Element& a, const Element& b) {
  return blockwise(a, b, "commutator",
                   [](const Matrix& x, const Matrix& y) -> Matrix { return x * y - y * x; });
}

Element adjoint(const Element& a) {
  std::vector<Matrix> out;
  for (const auto& b : a.blocks()) out.push_back(b.adjoint());
  return {a.algebra(), std::move(out)};
}

Element hermitian_part(const Element& a) { return 0.5 * (a + adjoint(a)); }

Element imaginary_part(const Element& a) { return Complex(0.0, -0.5) * (a - adjoint(a)); }

Complex trace_pairing(const Element& a, const Element& b) {
  require_same_algebra(a, b, "trace_pairing");
  Complex s = 0.0;
  for (std::size_t j = 0; j < a.blocks().size(); ++j)
    s += (a.block(j).array() * b.block(j).transpose().array()).sum();
  return s;
}

double distance(const Element& a, const Element& b) {
  require_same_algebra(a, b, "distance");
  double s = 0.0;
  for (std::size_t j = 0; j < a.blocks().size(); ++j)
    s += (a.block(j) - b.block(j)).squaredNorm();
  return std::sqrt(s);
}

double relative_distance(const Element& a, const Element& b) {
  return distance(a, b) / std::max({1.0, a.norm(), b.norm()});
}

bool close(const Element& a, const Element& b, double tol) {
  return relative_distance(a, b) <= tol;
}

// ---------------------------------------------------------------------------

HermitianBasis::HermitianBasis(const FdAlgebra& algebra) : algebra_(algebra) {
  for (std::size_t j = 0; j < algebra.num_blocks(); ++j) {
    const int n = algebra.block_dim(j);
    for (int i = 0; i < n; ++i) elements_.push_back(Element::matrix_unit(algebra, j, i, i));
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        const Element eik = Element::matrix_unit(algebra, j, i, k);
        const Element eki = Element::matrix_unit(algebra, j, k, i);
        elements_.push_back(eik + eki);
        elements_.push_back(I * (eik - eki));
      }
    }
  }
}

Eigen::VectorXd hermitian_coordinates(const Element& h) {
  const FdAlgebra& alg = h.algebra();
  Eigen::VectorXd c(alg.dimension());
  Eigen::Index pos = 0;
  for (std::size_t j = 0; j < alg.num_blocks(); ++j) {
    const Matrix& m = h.block(j);
    const int n = alg.block_dim(j);
    for (int i = 0; i < n; ++i) c(pos++) = m(i, i).real();
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        // Hermitian part has (i,k) entry ½(m_ik + conj(m_ki)).
        const Complex hik = 0.5 * (m(i, k) + std::conj(m(k, i)));
        c(pos++) = hik.real();
        c(pos++) = hik.imag();
      }
    }
  }
  return c;
}

Eigen::VectorXd HermitianBasis::coordinates(const Element& h) const {
  if (!(h.algebra() == algebra_)) throw structural_error("coordinates: foreign element");
  return hermitian_coordinates(h);
}

Element HermitianBasis::combine(const Eigen::VectorXd& coords) const {
  if (coords.size() != static_cast<Eigen::Index>(elements_.size()))
    throw structural_error("combine: coordinate count mismatch");
  Element out = Element::zero(algebra_);
  for (std::size_t k = 0; k < elements_.size(); ++k)
    if (coords(static_cast<Eigen::Index>(k)) != 0.0)
      out += coords(static_cast<Eigen::Index>(k)) * elements_[k];
  return out;
}

// ---------------------------------------------------------------------------

CentralProjection::CentralProjection(FdAlgebra algebra, std::vector<bool> mask)
    : algebra_(std::move(algebra)), mask_(std::move(mask)) {
  if (mask_.size() != algebra_.num_blocks())
    throw structural_error("central projection mask must have one entry per block");
}

CentralProjection CentralProjection::unit(const FdAlgebra& algebra) {
  return {algebra, std::vector<bool>(algebra.num_blocks(), true)};
}

CentralProjection CentralProjection::zero(const FdAlgebra& algebra) {
  return {algebra, std::vector<bool>(algebra.num_blocks(), false)};
}

CentralProjection CentralProjection::from_bits(const FdAlgebra& algebra, unsigned long bits) {
  std::vector<bool> mask(algebra.num_blocks());
  for (std::size_t j = 0; j < mask.size(); ++j) mask[j] = (bits >> j) & 1UL;
  return {algebra, std::move(mask)};
}

CentralProjection CentralProjection::from_element(const Element& c, double tol) {
  const FdAlgebra& m = c.algebra();
  std::vector<bool> mask(m.num_blocks());
  for (std::size_t j = 0; j < m.num_blocks(); ++j) {
    const int n = m.block_dim(j);
    const Matrix& b = c.block(j);
    const double scale = std::max(1.0, b.norm());
    if (b.norm() <= tol * scale)
      mask[j] = false;
    else if ((b - Matrix::Identity(n, n)).norm() <= tol * scale)
      mask[j] = true;
    else
      throw domain_error("not a central projection: block " + std::to_string(j) +
                         " is neither 0 nor 1");
  }
  return {m, std::move(mask)};
}

Element CentralProjection::element() const {
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < mask_.size(); ++j) {
    const int n = algebra_.block_dim(j);
    blocks.push_back(mask_[j] ? Matrix(Matrix::Identity(n, n)) : Matrix(Matrix::Zero(n, n)));
  }
  return {algebra_, std::move(blocks)};
}

Element CentralProjection::symmetry() const {
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < mask_.size(); ++j) {
    const int n = algebra_.block_dim(j);
    blocks.push_back(sign(j) * Matrix::Identity(n, n));
  }
  return {algebra_, std::move(blocks)};
}

bool CentralProjection::is_unit() const noexcept {
  return std::all_of(mask_.begin(), mask_.end(), [](bool b) { return b; });
}

bool CentralProjection::is_zero() const noexcept {
  return std::none_of(mask_.begin(), mask_.end(), [](bool b) { return b; });
}

std::vector<CentralProjection> central_projections(const FdAlgebra& algebra) {
  const std::size_t k = algebra.num_blocks();
  if (k >= 8 * sizeof(unsigned long)) throw resource_error("too many blocks");
  std::vector<CentralProjection> out;
  for (unsigned long bits = 0; bits < (1UL << k); ++bits)
    out.push_back(CentralProjection::from_bits(algebra, bits));
  return out;
}

Element twisted_multiply(const Element& a, const Element& b, const CentralProjection& c) {
  require_same_algebra(a, b, "twisted_multiply");
  if (!(c.algebra() == a.algebra())) throw structural_error("twisted_multiply: foreign projection");
  std::vector<Matrix> out;
  for (std::size_t j = 0; j < a.blocks().size(); ++j)
    out.push_back(c[j] ? Matrix(a.block(j) * b.block(j)) : Matrix(b.block(j) * a.block(j)));
  return {a.algebra(), std::move(out)};
}

}  // namespace vna
