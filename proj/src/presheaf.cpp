#include "vna/presheaf.hpp"

#include <algorithm>
#include <cmath>

#include "vna/error.hpp"

namespace vna {

PresheafFragment::PresheafFragment(ContextPoset base, std::vector<GelfandSpectrum> spectra,
                                   std::vector<CharacterMap> restrictions, bool spectral)
    : base_(std::move(base)),
      spectra_(std::move(spectra)),
      restrictions_(std::move(restrictions)),
      spectral_(spectral) {
  const std::size_t n = base_.size();
  if (spectra_.size() != n || restrictions_.size() != n * n)
    throw structural_error("presheaf fragment: one spectrum per node, one table per pair");
}

const CharacterMap& PresheafFragment::restriction(std::size_t i, std::size_t j) const {
  if (!base_.leq(i, j))
    throw domain_error("no restriction between incomparable nodes " + std::to_string(i) + " and " +
                       std::to_string(j));
  return restrictions_[i * size() + j];
}

bool PresheafFragment::is_functorial() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!base_.leq(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (!base_.leq(j, k)) continue;
        const CharacterMap& ij = restriction(i, j);
        const CharacterMap& jk = restriction(j, k);
        const CharacterMap& ik = restriction(i, k);
        for (std::size_t c = 0; c < ik.size(); ++c)
          if (ij[jk[c]] != ik[c]) return false;
      }
    }
  return true;
}

FragmentPtr build_presheaf(const ContextPoset& p) {
  const std::size_t n = p.size();
  std::vector<GelfandSpectrum> spectra;
  for (const auto& v : p.nodes()) spectra.push_back(gelfand_spectrum(v, p.tolerance()));
  std::vector<CharacterMap> tables(n * n);
  for (const auto& [i, j] : p.order_pairs())
    tables[i * n + j] = restriction(p.node(i), p.node(j), p.tolerance());
  return std::make_shared<const PresheafFragment>(p, std::move(spectra), std::move(tables), true);
}

FragmentPtr pullback(const OrderMap& h, const ContextPoset& domain, const FragmentPtr& q) {
  if (h.size() != domain.size())
    throw domain_error("pullback: base map has the wrong number of nodes");
  for (std::size_t j = 0; j < h.size(); ++j)
    if (h(j) >= q->size())
      throw domain_error("pullback: node " + std::to_string(j) + " maps outside the base");
  const std::size_t n = domain.size();
  std::vector<GelfandSpectrum> spectra;
  for (std::size_t j = 0; j < n; ++j) spectra.push_back(q->spectrum(h(j)));
  std::vector<CharacterMap> tables(n * n);
  for (const auto& [i, j] : domain.order_pairs()) {
    if (!q->base().leq(h(i), h(j)))
      throw domain_error("pullback: base map does not preserve order at (" + std::to_string(i) +
                         ", " + std::to_string(j) + ")");
    tables[i * n + j] = q->restriction(h(i), h(j));
  }
  return std::make_shared<const PresheafFragment>(domain, std::move(spectra), std::move(tables),
                                                  false);
}

// ---------------------------------------------------------------------------

bool PresheafMorphism::is_natural() const {
  const PresheafFragment& src = *source;
  const PresheafFragment& tgt = *target;
  for (const auto& [lo, hi] : tgt.base().order_pairs(true)) {
    const std::size_t hlo = base_map(lo), hhi = base_map(hi);
    if (!src.base().leq(hlo, hhi)) return false;
    const CharacterMap& r_src = src.restriction(hlo, hhi);
    const CharacterMap& r_tgt = tgt.restriction(lo, hi);
    // ι_lo ∘ r_src = r_tgt ∘ ι_hi on the characters of source at H(hi).
    for (std::size_t c = 0; c < src.num_characters(hhi); ++c)
      if (components[lo][r_src[c]] != r_tgt[components[hi][c]]) return false;
  }
  return true;
}

bool same_fragment(const PresheafFragment& a, const PresheafFragment& b) {
  if (&a == &b) return true;
  if (a.size() != b.size()) return false;
  const double tol = std::max(a.base().tolerance(), b.base().tolerance());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Context& ca = a.spectrum(i).context();
    const Context& cb = b.spectrum(i).context();
    if (ca.size() != cb.size() || !(ca.algebra() == cb.algebra())) return false;
    for (std::size_t k = 0; k < ca.size(); ++k)
      if (!close(ca.atom(k), cb.atom(k), tol)) return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a.base().leq(i, j) != b.base().leq(i, j)) return false;
      if (a.base().leq(i, j) && a.restriction(i, j) != b.restriction(i, j)) return false;
    }
  return true;
}

bool same_morphism(const PresheafMorphism& a, const PresheafMorphism& b) {
  return same_fragment(*a.source, *b.source) && same_fragment(*a.target, *b.target) &&
         a.base_map == b.base_map && a.components == b.components;
}

PresheafMorphism identity_morphism(const FragmentPtr& p) {
  PresheafMorphism m{p, p, identity_order_map(p->size()), {}};
  for (std::size_t j = 0; j < p->size(); ++j) {
    CharacterMap id(p->num_characters(j));
    for (std::size_t c = 0; c < id.size(); ++c) id[c] = c;
    m.components.push_back(std::move(id));
  }
  return m;
}

PresheafMorphism induced_presheaf_morphism(const JordanMap& f, const FragmentPtr& p_m,
                                           const FragmentPtr& p_n) {
  if (!p_m->is_spectral() || !p_n->is_spectral())
    throw domain_error("induced morphisms need spectral presheaf fragments");
  if (!p_m->base().empty() && !(p_m->base().node(0).algebra() == f.domain()))
    throw structural_error("induced_presheaf_morphism: domain fragment is not over " +
                           f.domain().name());
  if (!p_n->base().empty() && !(p_n->base().node(0).algebra() == f.codomain()))
    throw structural_error("induced_presheaf_morphism: codomain fragment is not over " +
                           f.codomain().name());

  const double tol = p_m->base().tolerance();
  PresheafMorphism m{p_n, p_m, {}, {}};
  for (std::size_t j = 0; j < p_m->size(); ++j) {
    const Context& v = p_m->base().node(j);
    std::vector<Element> images;
    for (const auto& p : v.atoms()) images.push_back(f(p));
    const Context w = image_context(f, v, tol);
    const auto target = p_n->base().find(w);
    if (!target)
      throw domain_error("image of node " + std::to_string(j) + " escapes the codomain fragment");
    m.base_map.image.push_back(*target);

    // λ_q ∘ f|_V is the character of V at the unique atom p with f(p) ≥ q.
    const GelfandSpectrum& sigma_w = p_n->spectrum(*target);
    CharacterMap component;
    for (std::size_t q = 0; q < sigma_w.size(); ++q) {
      std::size_t hit = v.size();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double value = sigma_w.evaluate_unchecked(q, images[i]).real();
        if (std::abs(value - 1.0) <= std::sqrt(tol)) {
          if (hit != v.size()) throw numeric_error("λ∘f is not a character of node " + std::to_string(j));
          hit = i;
        } else if (std::abs(value) > std::sqrt(tol)) {
          throw numeric_error("λ∘f is not a character of node " + std::to_string(j));
        }
      }
      if (hit == v.size()) throw numeric_error("λ∘f vanishes on node " + std::to_string(j));
      component.push_back(hit);
    }
    m.components.push_back(std::move(component));
  }
  return m;
}

PresheafMorphism compose(const PresheafMorphism& m2, const PresheafMorphism& m1) {
  if (!same_fragment(*m1.target, *m2.source))
    throw structural_error("compose: the first arrow's target is not the second arrow's source");
  PresheafMorphism out{m1.source, m2.target, {}, {}};
  for (std::size_t j = 0; j < m2.target->size(); ++j) {
    const std::size_t hj = m2.base_map(j);
    out.base_map.image.push_back(m1.base_map(hj));
    const CharacterMap& outer = m2.components[j];
    const CharacterMap& inner = m1.components[hj];
    CharacterMap c;
    for (std::size_t x : inner) c.push_back(outer[x]);
    out.components.push_back(std::move(c));
  }
  return out;
}

bool is_isomorphism(const PresheafMorphism& m) {
  if (!is_order_isomorphism(m.base_map, m.target->base(), m.source->base())) return false;
  for (std::size_t j = 0; j < m.components.size(); ++j) {
    const CharacterMap& c = m.components[j];
    const std::size_t n_tgt = m.target->num_characters(j);
    if (c.size() != n_tgt) return false;
    std::vector<char> hit(n_tgt, 0);
    for (std::size_t x : c) {
      if (x >= n_tgt || hit[x]) return false;
      hit[x] = 1;
    }
  }
  return true;
}

std::optional<std::size_t> find_inducing_map(const PresheafMorphism& m,
                                             const std::vector<JordanMap>& catalog) {
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    try {
      if (same_morphism(induced_presheaf_morphism(catalog[k], m.target, m.source), m)) return k;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace vna
