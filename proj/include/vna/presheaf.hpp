#pragma once

// The spectral presheaf over a finite context fragment, and the category of
// presheaves over varying bases: arrows ⟨H, ι⟩ with H a base map running
// against the arrow and ι a natural family of maps between character sets.

#include <memory>
#include <optional>
#include <vector>

#include "vna/contexts.hpp"
#include "vna/jordan_map.hpp"

namespace vna {

/// Map between finite character sets: entry k is the image of character k.
using CharacterMap = std::vector<std::size_t>;

class PresheafFragment {
 public:
  /// `restrictions[i * n + j]` is the table for base.leq(i, j); empty otherwise.
  PresheafFragment(ContextPoset base, std::vector<GelfandSpectrum> spectra,
                   std::vector<CharacterMap> restrictions, bool spectral);

  const ContextPoset& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return base_.size(); }
  const GelfandSpectrum& spectrum(std::size_t node) const { return spectra_.at(node); }
  std::size_t num_characters(std::size_t node) const { return spectra_.at(node).size(); }

  /// Σ(i ≤ j): characters of node j → characters of node i.
  const CharacterMap& restriction(std::size_t i, std::size_t j) const;

  /// True when every node carries the spectrum of its own context (built by
  /// build_presheaf rather than pulled back).
  bool is_spectral() const noexcept { return spectral_; }

  /// Every chain i ≤ j ≤ k composes: r(i,j) ∘ r(j,k) = r(i,k).
  bool is_functorial() const;

 private:
  ContextPoset base_;
  std::vector<GelfandSpectrum> spectra_;
  std::vector<CharacterMap> restrictions_;
  bool spectral_;
};

using FragmentPtr = std::shared_ptr<const PresheafFragment>;

/// Spectra at every node and restriction maps for every order pair.
FragmentPtr build_presheaf(const ContextPoset& p);

/// H*Q: node J of `domain` carries Q's spectrum at H(J). Throws a domain error
/// when H escapes Q's base or fails to preserve order.
FragmentPtr pullback(const OrderMap& h, const ContextPoset& domain, const FragmentPtr& q);

/// An arrow source → target: base_map sends target nodes to source nodes and
/// components[J] maps the characters of source at base_map(J) to those of
/// target at J.
struct PresheafMorphism {
  FragmentPtr source;
  FragmentPtr target;
  OrderMap base_map;
  std::vector<CharacterMap> components;

  /// Every naturality square over an order pair of the target base commutes.
  bool is_natural() const;
};

/// Same source and target fragments, equal base maps and components.
bool same_morphism(const PresheafMorphism& a, const PresheafMorphism& b);

/// Identical fragment objects, or fragments with the same nodes, atoms in the
/// same order, and equal restriction tables.
bool same_fragment(const PresheafFragment& a, const PresheafFragment& b);

PresheafMorphism identity_morphism(const FragmentPtr& p);

/// ⟨f̃, G_f⟩ : Σ_N|p_n → Σ_M|p_m with components λ ↦ λ ∘ f|_V. Throws a
/// domain error naming the first node whose image escapes p_n.
PresheafMorphism induced_presheaf_morphism(const JordanMap& f, const FragmentPtr& p_m,
                                           const FragmentPtr& p_n);

/// m2 ∘ m1 (m1 first): base maps compose as H'∘H and components as
/// ι_J ∘ ι'_{H(J)}. Throws a structural error unless m1.target is m2.source.
PresheafMorphism compose(const PresheafMorphism& m2, const PresheafMorphism& m1);

/// Base map an order-isomorphism and every component a bijection.
bool is_isomorphism(const PresheafMorphism& m);

/// Index of the first catalog map f with induced(f, m.target, m.source) = m.
/// Candidates of the wrong shape, or whose images escape m.source, are
/// skipped. Different maps may induce the same arrow on a small fragment.
std::optional<std::size_t> find_inducing_map(const PresheafMorphism& m,
                                             const std::vector<JordanMap>& catalog);

}  // namespace vna
