#include "vna/jordan_map.hpp"

#include <algorithm>

#include "vna/error.hpp"

namespace vna {

JordanMap::JordanMap(FdAlgebra domain, FdAlgebra codomain, std::vector<Element> basis_images,
                     std::string name)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      images_(std::move(basis_images)),
      name_(std::move(name)) {
  if (images_.size() != static_cast<std::size_t>(domain_.dimension()))
    throw structural_error("map needs " + std::to_string(domain_.dimension()) +
                           " basis images, got " + std::to_string(images_.size()));
  for (const auto& e : images_)
    if (!(e.algebra() == codomain_))
      throw structural_error("basis image lies outside the codomain " + codomain_.name());
}

JordanMap JordanMap::from_function(const FdAlgebra& domain, const FdAlgebra& codomain,
                                   const std::function<Element(const Element&)>& fn,
                                   std::string name) {
  const HermitianBasis basis(domain);
  std::vector<Element> images;
  images.reserve(basis.size());
  for (const auto& e : basis.elements()) images.push_back(fn(e));
  return {domain, codomain, std::move(images), std::move(name)};
}

JordanMap JordanMap::identity(const FdAlgebra& algebra) {
  return from_function(algebra, algebra, [](const Element& x) { return x; }, "identity");
}

JordanMap JordanMap::transpose(const FdAlgebra& algebra, const std::vector<std::size_t>& blocks) {
  for (std::size_t j : blocks)
    if (j >= algebra.num_blocks()) throw structural_error("transpose: no block " + std::to_string(j));
  return from_function(
      algebra, algebra,
      [&](const Element& x) {
        std::vector<Matrix> out = x.blocks();
        for (std::size_t j : blocks) out[j] = Matrix(out[j].transpose());
        return Element(x.algebra(), std::move(out));
      },
      "transpose");
}

JordanMap JordanMap::adjoint_action(const Element& u) {
  const Element u_star = adjoint(u);
  return from_function(
      u.algebra(), u.algebra(), [&](const Element& x) { return multiply(multiply(u, x), u_star); },
      "ad_u");
}

JordanMap JordanMap::permute_blocks(const FdAlgebra& algebra, const std::vector<std::size_t>& perm) {
  if (perm.size() != algebra.num_blocks()) throw structural_error("permute_blocks: wrong length");
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t j = 0; j < sorted.size(); ++j)
    if (sorted[j] != j) throw structural_error("permute_blocks: not a permutation");
  for (std::size_t j = 0; j < perm.size(); ++j)
    if (algebra.block_dim(perm[j]) != algebra.block_dim(j))
      throw structural_error("permute_blocks: block sizes differ");
  return from_function(
      algebra, algebra,
      [&](const Element& x) {
        std::vector<Matrix> out;
        for (std::size_t j = 0; j < perm.size(); ++j) out.push_back(x.block(perm[j]));
        return Element(x.algebra(), std::move(out));
      },
      "permute_blocks");
}

JordanMap JordanMap::direct_sum(const std::vector<JordanMap>& parts) {
  if (parts.empty()) throw structural_error("direct_sum: no summands");
  std::vector<int> dom_dims, cod_dims;
  std::string name;
  for (const auto& f : parts) {
    dom_dims.insert(dom_dims.end(), f.domain().block_dims().begin(), f.domain().block_dims().end());
    cod_dims.insert(cod_dims.end(), f.codomain().block_dims().begin(), f.codomain().block_dims().end());
    name += (name.empty() ? "" : "⊕") + f.name();
  }
  const FdAlgebra dom(dom_dims), cod(cod_dims);
  return from_function(
      dom, cod,
      [&](const Element& x) {
        std::vector<Matrix> out;
        std::size_t offset = 0;
        for (const auto& f : parts) {
          const std::size_t k = f.domain().num_blocks();
          std::vector<Matrix> piece(x.blocks().begin() + offset, x.blocks().begin() + offset + k);
          const Element y = f(Element(f.domain(), std::move(piece)));
          out.insert(out.end(), y.blocks().begin(), y.blocks().end());
          offset += k;
        }
        return Element(cod, std::move(out));
      },
      name);
}

Element JordanMap::operator()(const Element& x) const {
  if (!(x.algebra() == domain_))
    throw structural_error("map " + name_ + " applied to an element of " + x.algebra().name());
  const Eigen::VectorXd re = hermitian_coordinates(hermitian_part(x));
  const Eigen::VectorXd im = hermitian_coordinates(imaginary_part(x));
  Element out = Element::zero(codomain_);
  for (std::size_t k = 0; k < images_.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const Complex w(re(kk), im(kk));
    if (w != 0.0) out += w * images_[k];
  }
  return out;
}

Eigen::MatrixXd JordanMap::real_matrix() const {
  Eigen::MatrixXd r(codomain_.dimension(), domain_.dimension());
  for (std::size_t k = 0; k < images_.size(); ++k)
    r.col(static_cast<Eigen::Index>(k)) = hermitian_coordinates(images_[k]);
  return r;
}

JordanMap JordanMap::inverse(double max_condition) const {
  if (domain_.dimension() != codomain_.dimension())
    throw numeric_error("map " + name_ + " is not invertible: dimensions differ");
  const Eigen::MatrixXd r = real_matrix();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0 || smax / smin > max_condition)
    throw numeric_error("map " + name_ + " is not invertible (condition number " +
                        std::to_string(smin == 0.0 ? INFINITY : smax / smin) + ")");
  const Eigen::MatrixXd inv = r.inverse();
  const HermitianBasis dom_basis(domain_);
  std::vector<Element> images;
  for (Eigen::Index l = 0; l < inv.cols(); ++l) images.push_back(dom_basis.combine(inv.col(l)));
  return {codomain_, domain_, std::move(images), name_ + "^-1"};
}

bool JordanMap::is_unital(double tol) const {
  return close((*this)(Element::identity(domain_)), Element::identity(codomain_), tol);
}

JordanMap compose(const JordanMap& g, const JordanMap& f) {
  if (!(f.codomain() == g.domain()))
    throw structural_error("compose: " + g.name() + " cannot follow " + f.name());
  std::vector<Element> images;
  for (const auto& e : f.basis_images()) images.push_back(g(e));
  return {f.domain(), g.codomain(), std::move(images), g.name() + "∘" + f.name()};
}

}  // namespace vna
