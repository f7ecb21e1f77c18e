#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vna/algebra.hpp"

namespace vna {

/// A complex-linear map M → N, stored as the images of the Hermitian basis of
/// M and extended by x = x₁ + i·x₂ ↦ f(x₁) + i·f(x₂). Nothing about Jordan or
/// *-preservation is assumed; the morphisms checks decide that.
class JordanMap {
 public:
  JordanMap(FdAlgebra domain, FdAlgebra codomain, std::vector<Element> basis_images,
            std::string name = "matrix");

  static JordanMap identity(const FdAlgebra& algebra);
  /// Transpose on the listed blocks, identity on the rest.
  static JordanMap transpose(const FdAlgebra& algebra, const std::vector<std::size_t>& blocks);
  /// x ↦ u x u*.
  static JordanMap adjoint_action(const Element& u);
  /// f(x)_j = x_{perm[j]}; perm must respect block sizes.
  static JordanMap permute_blocks(const FdAlgebra& algebra, const std::vector<std::size_t>& perm);
  /// Samples `fn` on the Hermitian basis of `domain`.
  static JordanMap from_function(const FdAlgebra& domain, const FdAlgebra& codomain,
                                 const std::function<Element(const Element&)>& fn,
                                 std::string name);
  /// f₁ ⊕ f₂ ⊕ ...: the blocks of the sum are the parts' blocks in order.
  static JordanMap direct_sum(const std::vector<JordanMap>& parts);

  const FdAlgebra& domain() const noexcept { return domain_; }
  const FdAlgebra& codomain() const noexcept { return codomain_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Element>& basis_images() const noexcept { return images_; }

  Element operator()(const Element& x) const;

  /// Coordinates of hermitian_part(f(e_k)) in the codomain Hermitian basis,
  /// one column per domain basis element.
  Eigen::MatrixXd real_matrix() const;

  /// Inverse of a bijective *-map via its real matrix. Throws a numeric error
  /// when the dimensions differ or the condition number exceeds `max_condition`.
  JordanMap inverse(double max_condition = 1e8) const;

  bool is_unital(double tol) const;

 private:
  FdAlgebra domain_;
  FdAlgebra codomain_;
  std::vector<Element> images_;
  std::string name_;
};

/// g ∘ f.
JordanMap compose(const JordanMap& g, const JordanMap& f);

}  // namespace vna
