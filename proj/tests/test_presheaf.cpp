#include <doctest.h>

#include "support.hpp"
#include "vna/error.hpp"
#include "vna/morphisms.hpp"
#include "vna/presheaf.hpp"
#include "vna/random.hpp"

using namespace vna;
using namespace vna::testing;

namespace {

// Every length-2 chain composes.
bool chains_compose(const PresheafFragment& p) {
  const ContextPoset& b = p.base();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (!b.leq(i, j) || !b.leq(j, k)) continue;
        const auto& ij = p.restriction(i, j);
        const auto& jk = p.restriction(j, k);
        const auto& ik = p.restriction(i, k);
        for (std::size_t c = 0; c < ik.size(); ++c)
          if (ij[jk[c]] != ik[c]) return false;
      }
  return true;
}

std::vector<std::size_t> spectrum_sizes(const PresheafFragment& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(p.num_characters(i));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

TEST_CASE("presheaves over small fragments") {
  const FdAlgebra m = m2();
  const FragmentPtr triv = build_presheaf(poset_fragment({Context::trivial(m)}));
  CHECK(triv->size() == 1);
  CHECK(triv->num_characters(0) == 1);

  const FragmentPtr d2 = build_presheaf(poset_fragment({diagonal_context(m)}));
  CHECK(spectrum_sizes(*d2) == std::vector<std::size_t>{2, 1});
  const auto pairs = d2->base().order_pairs(true);
  REQUIRE(pairs.size() == 1);
  CHECK(d2->restriction(pairs[0].first, pairs[0].second) == CharacterMap{0, 0});

  const FragmentPtr d3 = build_presheaf(poset_fragment({diagonal_context(FdAlgebra({3}))}));
  CHECK(spectrum_sizes(*d3) == std::vector<std::size_t>{3, 2, 2, 2, 1});
  CHECK(d3->is_functorial());
  CHECK(chains_compose(*d3));
  CHECK_THROWS_AS(d3->restriction(1, 2), Error);  // two coatoms are incomparable
}

TEST_CASE("restrictions compose on larger fragments") {
  const FdAlgebra m({2, 3});
  const FragmentPtr p = build_presheaf(
      poset_fragment({diagonal_context(m), random_maximal_context(m, 1), random_maximal_context(m, 2)}));
  CHECK(p->size() > 100);
  CHECK(chains_compose(*p));
  CHECK(p->is_functorial());
}

TEST_CASE("pullbacks") {
  const FdAlgebra m({3});
  const ContextPoset base = poset_fragment({diagonal_context(m)});
  const FragmentPtr q = build_presheaf(base);
  const FragmentPtr same = pullback(identity_order_map(base.size()), base, q);
  CHECK_FALSE(same->is_spectral());
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(same->num_characters(i) == q->num_characters(i));

  const std::size_t bottom = *base.find(Context::trivial(m));
  const FragmentPtr flat = pullback(OrderMap{std::vector<std::size_t>(base.size(), bottom)}, base, q);
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(flat->num_characters(i) == 1);
  CHECK(flat->is_functorial());

  CHECK_THROWS_AS(pullback(OrderMap{std::vector<std::size_t>(base.size(), 99)}, base, q), Error);
  // the top node sent below a coatom breaks order preservation
  const std::size_t top = *base.find(diagonal_context(m));
  std::vector<std::size_t> h = identity_order_map(base.size()).image;
  h[top] = bottom;
  CHECK_THROWS_AS(pullback(OrderMap{h}, base, q), Error);

  // along f̃ for f = Ad_u, spectra sizes survive nodewise
  Sampler s(5);
  const JordanMap ad = JordanMap::adjoint_action(s.unitary(m));
  const InducedOrderMap im = induced_order_map(ad, base);
  const FragmentPtr qi = build_presheaf(im.image);
  const FragmentPtr back = pullback(im.map, base, qi);
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(back->num_characters(i) == q->num_characters(i));
}

TEST_CASE("induced presheaf morphisms") {
  const FdAlgebra m = m2();
  const ContextPoset base = poset_fragment({diagonal_context(m)});
  const FragmentPtr p = build_presheaf(base);

  const PresheafMorphism id = induced_presheaf_morphism(JordanMap::identity(m), p, p);
  CHECK(same_morphism(id, identity_morphism(p)));
  CHECK(is_isomorphism(id));
  CHECK(id.is_natural());

  // transpose fixes diagonal atoms: identity permutation at diag
  const PresheafMorphism tr = induced_presheaf_morphism(JordanMap::transpose(m, {0}), p, p);
  const std::size_t top = *base.find(diagonal_context(m));
  CHECK(tr.base_map(top) == top);
  CHECK(tr.components[top] == CharacterMap{0, 1});

  // Ad_u: the character at u e11 u* pulls back to the character at e11
  Sampler s(31);
  const Element u = s.unitary(m);
  const JordanMap ad = JordanMap::adjoint_action(u);
  const InducedOrderMap im = induced_order_map(ad, base);
  const FragmentPtr q = build_presheaf(im.image);
  const PresheafMorphism f = induced_presheaf_morphism(ad, p, q);
  CHECK(f.is_natural());
  CHECK(is_isomorphism(f));
  CHECK(f.base_map == im.map);
  const std::size_t img_top = f.base_map(top);
  const Context& w = q->spectrum(img_top).context();
  const Element ue11 = multiply(multiply(u, Element::matrix_unit(m, 0, 0, 0)), adjoint(u));
  const std::size_t k = distance(w.atom(0), ue11) < 1e-9 ? 0 : 1;
  CHECK(distance(w.atom(k), ue11) < 1e-9);
  CHECK(f.components[top][k] == 0);

  CHECK_THROWS_AS(induced_presheaf_morphism(ad, p, p), Error);  // image escapes p
}

TEST_CASE("non-injective maps induce non-isomorphisms") {
  const FdAlgebra mm({2, 2});
  const FdAlgebra n = m2();
  const JordanMap proj = JordanMap::from_function(
      mm, n, [&](const Element& x) { return Element(n, {x.block(0)}); }, "first summand");
  const ContextPoset base = poset_fragment({diagonal_context(mm)});
  const InducedOrderMap im = induced_order_map(proj, base);
  const FragmentPtr pm = build_presheaf(base), pn = build_presheaf(im.image);
  const PresheafMorphism f = induced_presheaf_morphism(proj, pm, pn);
  CHECK(f.is_natural());
  CHECK_FALSE(is_isomorphism(f));
}

TEST_CASE("category laws: identities, associativity, contravariance") {
  const FdAlgebra m({2, 3});
  Sampler s(41);
  const JordanMap f = JordanMap::adjoint_action(s.unitary(m));
  const JordanMap g = JordanMap::transpose(m, {1});
  const JordanMap h = JordanMap::adjoint_action(s.unitary(m));

  const ContextPoset p0 = poset_fragment({random_maximal_context(m, 7)});
  const InducedOrderMap i1 = induced_order_map(f, p0);
  const InducedOrderMap i2 = induced_order_map(g, i1.image);
  const InducedOrderMap i3 = induced_order_map(h, i2.image);
  const FragmentPtr s0 = build_presheaf(p0), s1 = build_presheaf(i1.image),
                    s2 = build_presheaf(i2.image), s3 = build_presheaf(i3.image);
  REQUIRE(s0->size() >= 5);

  const PresheafMorphism F = induced_presheaf_morphism(f, s0, s1);  // Σ1 → Σ0
  const PresheafMorphism G = induced_presheaf_morphism(g, s1, s2);  // Σ2 → Σ1
  const PresheafMorphism H = induced_presheaf_morphism(h, s2, s3);  // Σ3 → Σ2

  CHECK(same_morphism(compose(F, identity_morphism(s1)), F));
  CHECK(same_morphism(compose(identity_morphism(s0), F), F));
  CHECK(same_morphism(compose(compose(F, G), H), compose(F, compose(G, H))));

  const PresheafMorphism gf = induced_presheaf_morphism(compose(g, f), s0, s2);
  CHECK(same_morphism(gf, compose(F, G)));
  const PresheafMorphism hgf = induced_presheaf_morphism(compose(h, compose(g, f)), s0, s3);
  CHECK(same_morphism(hgf, compose(F, compose(G, H))));
  CHECK(compose(F, G).is_natural());

  CHECK_THROWS_AS(compose(G, G), Error);
}

TEST_CASE("recovering a map from an induced isomorphism by catalog search") {
  const FdAlgebra m({2, 3});
  Sampler s(43);
  const JordanMap u = JordanMap::adjoint_action(s.unitary(m));
  const JordanMap v = JordanMap::adjoint_action(s.unitary(m));
  const ContextPoset p = poset_fragment({random_maximal_context(m, 11)});
  const InducedOrderMap iv = induced_order_map(v, p);
  const FragmentPtr sm = build_presheaf(p), sn = build_presheaf(iv.image);
  const PresheafMorphism target = induced_presheaf_morphism(v, sm, sn);
  REQUIRE(is_isomorphism(target));

  const std::vector<JordanMap> catalog{JordanMap::identity(m), u, JordanMap::transpose(m, {0, 1}),
                                       v};
  const auto hit = find_inducing_map(target, catalog);
  REQUIRE(hit.has_value());
  CHECK(*hit == 3);
  CHECK_FALSE(find_inducing_map(target, {JordanMap::identity(m), u}).has_value());
  CHECK_FALSE(find_inducing_map(target, {}).has_value());
}
