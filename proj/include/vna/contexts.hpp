#pragma once

// Abelian subalgebras (contexts), finite fragments of the context poset, their
// Gelfand spectra and restriction maps.

#include <optional>
#include <vector>

#include "vna/algebra.hpp"
#include "vna/config.hpp"
#include "vna/jordan_map.hpp"

namespace vna {

/// A unital abelian subalgebra, given by its atoms: nonzero pairwise
/// orthogonal projections summing to 1. The subalgebra is their complex span.
class Context {
 public:
  /// Validates the atom conditions to `tol`; throws a domain error otherwise.
  Context(FdAlgebra algebra, std::vector<Element> atoms, double tol = 1e-9);

  /// C·1.
  static Context trivial(const FdAlgebra& algebra);

  const FdAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<Element>& atoms() const noexcept { return atoms_; }
  const Element& atom(std::size_t i) const { return atoms_.at(i); }
  std::size_t size() const noexcept { return atoms_.size(); }
  /// rank of each atom (its trace).
  const std::vector<int>& ranks() const noexcept { return ranks_; }

  /// Σ_i coeffs[i]·p_i.
  Element combine(const std::vector<Complex>& coeffs) const;

 private:
  struct Trusted {};
  Context(Trusted, FdAlgebra algebra, std::vector<Element> atoms);
  friend Context make_trusted_context(FdAlgebra, std::vector<Element>);

  FdAlgebra algebra_;
  std::vector<Element> atoms_;
  std::vector<int> ranks_;
};

/// Same subalgebra: atom sets agree as sets, up to `tol`.
bool same_context(const Context& a, const Context& b, double tol = 1e-9);

/// The smallest context containing the pairwise-commuting Hermitian
/// generators: atoms are the nonzero joint spectral projections. Eigenvalues
/// closer than `cluster` share a spectral projection.
Context context_from_commuting(const FdAlgebra& algebra, const std::vector<Element>& generators,
                               double tol = 1e-9, double cluster = 1e-8);

/// lower ⊆ upper: every atom of `lower` is a sum of atoms of `upper`.
bool leq(const Context& lower, const Context& upper, double tol = 1e-9);

/// The greatest context below both: a ∩ b.
Context meet(const Context& a, const Context& b, double tol = 1e-9);

/// All partitions of {0,…,n−1} as restricted growth strings (block label per
/// element), in lexicographic order.
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);

/// One subcontext per partition of the atoms of `v` (atoms merged blockwise).
/// Throws a resource error above `atom_cap` atoms.
std::vector<Context> down_closure(const Context& v, std::size_t atom_cap = 8);

/// A finite set of contexts with the inclusion order as a boolean matrix.
class ContextPoset {
 public:
  ContextPoset() = default;

  /// Deduplicates `nodes` (first occurrence wins) and computes the order.
  /// Throws a resource error when more than `node_cap` distinct nodes arise.
  static ContextPoset from_nodes(const std::vector<Context>& nodes, double tol = 1e-9,
                                 std::size_t node_cap = 500);

  const std::vector<Context>& nodes() const noexcept { return nodes_; }
  const Context& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  double tolerance() const noexcept { return tol_; }

  /// node(i) ≤ node(j).
  bool leq(std::size_t i, std::size_t j) const { return order_[i * nodes_.size() + j]; }
  /// All pairs (i, j) with i ≤ j, i ≠ j excluded when `strict`.
  std::vector<std::pair<std::size_t, std::size_t>> order_pairs(bool strict = false) const;

  std::optional<std::size_t> find(const Context& v) const;

 private:
  std::vector<Context> nodes_;
  std::vector<std::vector<double>> signatures_;
  std::vector<char> order_;
  double tol_ = 1e-9;
};

/// The down-closed fragment generated by `seeds`: contains every subcontext of
/// every seed. Down-closed node sets are meet-closed, since meet(a, b) ≤ a.
ContextPoset poset_fragment(const std::vector<Context>& seeds, const SessionConfig& config = {});

/// Characters of a context, indexed by its atoms: λ_p(Σ α_i p_i) = α_p.
class GelfandSpectrum {
 public:
  explicit GelfandSpectrum(Context context, double tol = 1e-9)
      : context_(std::move(context)), tol_(tol) {}

  const Context& context() const noexcept { return context_; }
  std::size_t size() const noexcept { return context_.size(); }

  /// tr(p·a)/tr(p). Throws a domain error when `a` is not in the context.
  Complex evaluate(std::size_t character, const Element& a) const;
  /// Same, without the membership check.
  Complex evaluate_unchecked(std::size_t character, const Element& a) const;
  /// All character values; checks membership once.
  std::vector<Complex> evaluate_all(const Element& a) const;

 private:
  Context context_;
  double tol_;
};

GelfandSpectrum gelfand_spectrum(const Context& v, double tol = 1e-9);

/// λ ↦ λ|_{lower}: entry i is the character of `lower` (an atom index) that the
/// character at atom i of `upper` restricts to. Throws unless lower ≤ upper.
std::vector<std::size_t> restriction(const Context& lower, const Context& upper,
                                     double tol = 1e-9);

/// u V u*. Throws a domain error when u is not unitary.
Context conjugate_context(const Context& v, const Element& u, double tol = 1e-9);

/// Node map between two posets: node i of the domain goes to image[i].
struct OrderMap {
  std::vector<std::size_t> image;

  std::size_t operator()(std::size_t i) const { return image.at(i); }
  std::size_t size() const noexcept { return image.size(); }
  friend bool operator==(const OrderMap&, const OrderMap&) = default;
};

OrderMap identity_order_map(std::size_t n);
/// (g ∘ f)(i) = g(f(i)).
OrderMap compose(const OrderMap& g, const OrderMap& f);

bool is_order_preserving(const OrderMap& map, const ContextPoset& domain,
                         const ContextPoset& codomain);
/// Bijective, and i ≤ j ⇔ map(i) ≤ map(j).
bool is_order_isomorphism(const OrderMap& map, const ContextPoset& domain,
                          const ContextPoset& codomain);

/// f[V]: atoms f(p), with atoms sent to 0 dropped. Throws a domain error when
/// some f(p) is not a projection or the images do not form a context.
Context image_context(const JordanMap& f, const Context& v, double tol = 1e-9);

/// Locates each image node in `target`; throws a domain error naming the
/// nodes whose image escapes it.
OrderMap locate_images(const std::vector<Context>& images, const ContextPoset& target);

/// f̃ restricted to P, landing in `target`.
OrderMap induced_order_map(const JordanMap& f, const ContextPoset& p, const ContextPoset& target);

/// f̃ restricted to P, together with the image fragment it lands in.
struct InducedOrderMap {
  ContextPoset image;
  OrderMap map;
};
InducedOrderMap induced_order_map(const JordanMap& f, const ContextPoset& p);

}  // namespace vna
