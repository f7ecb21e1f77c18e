#include <doctest.h>

#include <numbers>

#include "support.hpp"
#include "vna/error.hpp"
#include "vna/morphisms.hpp"
#include "vna/random.hpp"

using namespace vna;
using namespace vna::testing;

namespace {

constexpr double pi = std::numbers::pi;

JordanMap diagonal_compression(const FdAlgebra& m) {
  return JordanMap::from_function(
      m, m,
      [](const Element& x) {
        Matrix d = Matrix::Zero(x.block(0).rows(), x.block(0).cols());
        d.diagonal() = x.block(0).diagonal();
        return Element(x.algebra(), {d});
      },
      "diagonal");
}

}  // namespace

TEST_CASE("Jordan and star checks") {
  const FdAlgebra m = m2();
  const auto tr = check_jordan_star(JordanMap::transpose(m, {0}));
  CHECK(tr.jordan.passed);
  CHECK(tr.star.passed);
  Sampler s(1);
  const auto ad = check_jordan_star(JordanMap::adjoint_action(s.unitary(m)));
  CHECK(ad.jordan.passed);
  CHECK(ad.star.passed);
  const auto dg = check_jordan_star(diagonal_compression(m));
  CHECK_FALSE(dg.jordan.passed);
  CHECK(dg.star.passed);
  // x ↦ x̄ (entrywise conjugate) on the Hermitian basis is transposition, but
  // the complex-linear map x ↦ i·x is not a *-map
  const auto rot = check_jordan_star(JordanMap::from_function(
      m, m, [](const Element& x) { return I * x; }, "times i"));
  CHECK_FALSE(rot.star.passed);
}

TEST_CASE("commutator preservation") {
  const FdAlgebra m = m2();
  const JordanMap id = JordanMap::identity(m);
  const JordanMap tr = JordanMap::transpose(m, {0});
  CHECK(check_commutator_preservation(id, native_orientations(id)).passed);
  CHECK_FALSE(check_commutator_preservation(tr, native_orientations(tr)).passed);
  CHECK(check_commutator_reversal(tr, native_orientations(tr)).passed);
  // f([σ_z, σ_x]) = 2iσ_yᵀ = −2iσ_y while [fσ_z, fσ_x] = 2iσ_y
  CHECK(distance(tr(commutator(sz(), sx())), -2.0 * I * sy()) < 1e-15);
  CHECK(distance(commutator(tr(sz()), tr(sx())), 2.0 * I * sy()) < 1e-15);
  Sampler s(2);
  const JordanMap ad = JordanMap::adjoint_action(s.unitary(FdAlgebra({2, 3})));
  CHECK(check_commutator_preservation(ad, native_orientations(ad)).passed);
  CHECK(check_multiplicative_sample(ad, native_orientations(ad)).passed);
  CHECK_FALSE(check_multiplicative_sample(tr, native_orientations(tr)).passed);
}

TEST_CASE("orientation in derivation and flow form") {
  const FdAlgebra m = m2();
  Sampler s(3);
  const JordanMap ad = JordanMap::adjoint_action(s.unitary(m));
  const JordanMap tr = JordanMap::transpose(m, {0});
  const JordanMap id = JordanMap::identity(m);
  const auto grid = SessionConfig::default_time_grid();
  CHECK(check_orientation_delta(ad, native_orientations(ad)).passed);
  CHECK(check_orientation_delta(id, native_orientations(id)).passed);
  const CheckResult bad = check_orientation_delta(tr, native_orientations(tr));
  CHECK_FALSE(bad.passed);
  CHECK(check_orientation_flow(ad, native_orientations(ad), grid).passed);
  CHECK_FALSE(check_orientation_flow(tr, native_orientations(tr), {pi / 2}).passed);
  CHECK(check_orientation_flow(tr, native_orientations(tr), {0.0}).passed);

  // the σ_z, t = π/2 case written out: (e^{tψ_{σ_z}}σ_x)ᵀ = (−σ_y)ᵀ = σ_y, while
  // e^{tψ_{σ_z}}(σ_xᵀ) = −σ_y
  const InnerFlow fz = flow(sz(), native_dc(m));
  CHECK(distance(tr(fz(pi / 2, sx())), sy()) < 1e-14);
  CHECK(distance(fz(pi / 2, tr(sx())), -sy()) < 1e-14);
}

TEST_CASE("context diagram") {
  const FdAlgebra m = m2();
  Sampler s(4);
  const JordanMap ad = JordanMap::adjoint_action(s.unitary(m));
  const JordanMap tr = JordanMap::transpose(m, {0});
  const auto grid = SessionConfig::default_time_grid();
  const ContextPoset diag = poset_fragment({diagonal_context(m)});
  CHECK(check_context_diagram(ad, diag, sx(), grid, native_orientations(ad)).passed);
  const CheckResult bad = check_context_diagram(tr, diag, sx(), grid, native_orientations(tr));
  CHECK_FALSE(bad.passed);
  CHECK(bad.residual > 0);
  // central generator: both flows trivial
  CHECK(check_context_diagram(tr, diag, 3.0 * one(), grid, native_orientations(tr)).passed);

  // against an explicit closure, escapes are errors
  CHECK_THROWS_AS(
      check_context_diagram(tr, diag, sx(), {0.3}, native_orientations(tr), 1e-9, &diag), Error);
  CHECK(check_context_diagram(JordanMap::identity(m), diag, sz(), grid,
                              native_orientations(JordanMap::identity(m)), 1e-9, &diag)
            .passed);
}

TEST_CASE("presheaf diagram") {
  const FdAlgebra m = m2();
  const ContextPoset base = poset_fragment({random_maximal_context(m, 5)});
  const auto grid = SessionConfig::default_time_grid();
  const JordanMap id = JordanMap::identity(m);
  CHECK(check_presheaf_diagram(id, base, grid, native_orientations(id)).passed);
  Sampler s(5);
  const JordanMap ad = JordanMap::adjoint_action(s.unitary(m));
  CHECK(check_presheaf_diagram(ad, base, grid, native_orientations(ad)).passed);
  const JordanMap tr = JordanMap::transpose(m, {0});
  CHECK_FALSE(check_presheaf_diagram(tr, base, {0.3}, native_orientations(tr)).passed);

  const PresheafSquare sq = presheaf_square(ad, sx(), ad(sx()), base, 0.5, native_orientations(ad));
  CHECK(sq.commutes);
  CHECK(sq.domain_flow_first.is_natural());
  CHECK(sq.codomain_flow_first.is_natural());

  const FdAlgebra mm({2, 2});
  const JordanMap proj = JordanMap::from_function(
      mm, mm, [&](const Element& x) { return Element(mm, {x.block(0), x.block(0)}); }, "diag copy");
  CHECK_THROWS_AS(check_presheaf_diagram(proj, poset_fragment({diagonal_context(mm)}), grid,
                                         native_orientations(proj)),
                  Error);
}

TEST_CASE("classification") {
  Sampler s(6);
  const FdAlgebra m3({3});
  const JordanMap ad = JordanMap::adjoint_action(s.unitary(m3));
  const ClassifyResult r1 = classify(ad, native_orientations(ad));
  CHECK(r1.classification == Classification::vn_isomorphism);
  CHECK(r1.splitting_c->is_unit());
  const JordanMap tr = JordanMap::transpose(m3, {0});
  const ClassifyResult r2 = classify(tr, native_orientations(tr));
  CHECK(r2.classification == Classification::anti_isomorphism);
  CHECK(r2.splitting_c->is_zero());

  const FdAlgebra m({2, 3});
  const Element u2 = Element::in_block(m, 0, s.unitary(FdAlgebra({2})).block(0)) +
                     Element::in_block(m, 1, Matrix::Identity(3, 3));
  const JordanMap mixed = compose(JordanMap::adjoint_action(u2), JordanMap::transpose(m, {1}));
  const ClassifyResult r3 = classify(mixed, native_orientations(mixed));
  CHECK(r3.classification == Classification::mixed);
  CHECK(r3.splitting_c->mask() == std::vector<bool>{true, false});
  CHECK(r3.multiplicative == std::vector<bool>{true, false});
  CHECK(r3.anti_multiplicative == std::vector<bool>{false, true});

  // abelian blocks count as multiplicative
  const FdAlgebra mc({1, 2});
  const JordanMap trc = JordanMap::transpose(mc, {1});
  const ClassifyResult r4 = classify(trc, native_orientations(trc));
  CHECK(r4.classification == Classification::anti_isomorphism);
  CHECK(r4.splitting_c->mask() == std::vector<bool>{true, false});

  const JordanMap dg = diagonal_compression(FdAlgebra({2}));
  CHECK(classify(dg, native_orientations(dg)).classification == Classification::not_jordan);

  // a Jordan *-homomorphism that is not onto
  const FdAlgebra n2({2, 2});
  const FdAlgebra one2({2});
  const JordanMap emb = JordanMap::from_function(
      one2, n2, [&](const Element& x) { return Element(n2, {x.block(0), Matrix(x.block(0).transpose())}); },
      "x ⊕ xᵀ");
  const ClassifyResult r5 = classify(emb, native_orientations(emb));
  CHECK(r5.classification == Classification::jordan_only);
  CHECK(r5.splitting_c->mask() == std::vector<bool>{true, false});
}

TEST_CASE("composition coherence of classifications") {
  Sampler s(7);
  const FdAlgebra m({3});
  const JordanMap ad = JordanMap::adjoint_action(s.unitary(m));
  const JordanMap tr = JordanMap::transpose(m, {0});
  auto kind = [](const JordanMap& f) { return classify(f, native_orientations(f)).classification; };
  CHECK(kind(compose(ad, ad)) == Classification::vn_isomorphism);
  CHECK(kind(compose(ad, tr)) == Classification::anti_isomorphism);
  CHECK(kind(compose(tr, ad)) == Classification::anti_isomorphism);
  CHECK(kind(compose(tr, tr)) == Classification::vn_isomorphism);
}

TEST_CASE("opposite algebra") {
  const FdAlgebra m({2, 3});
  const JordanMap id = JordanMap::identity(m);
  const Orientations o{native_dc(m), dc_from_product(CentralProjection::zero(m))};
  const auto js = check_jordan_star(id);
  CHECK(js.jordan.passed);
  CHECK(js.star.passed);
  const ClassifyResult r = classify(id, o);
  CHECK(r.classification == Classification::anti_isomorphism);
  CHECK_FALSE(check_commutator_preservation(id, o).passed);
  CHECK(check_commutator_reversal(id, o).passed);
}

TEST_CASE("theorem suite on the catalog") {
  Sampler s(8);
  const FdAlgebra m2a({2}), m23({2, 3}), m22({2, 2});
  const Element u2 = Element::in_block(m23, 0, s.unitary(m2a).block(0)) +
                     Element::in_block(m23, 1, Matrix::Identity(3, 3));
  struct Case {
    JordanMap f;
    Classification expect;
  };
  const std::vector<Case> catalog{
      {JordanMap::identity(m23), Classification::vn_isomorphism},
      {JordanMap::adjoint_action(s.unitary(m2a)), Classification::vn_isomorphism},
      {JordanMap::adjoint_action(s.unitary(m23)), Classification::vn_isomorphism},
      {JordanMap::transpose(m2a, {0}), Classification::anti_isomorphism},
      {JordanMap::permute_blocks(m22, {1, 0}), Classification::vn_isomorphism},
      {compose(JordanMap::adjoint_action(u2), JordanMap::transpose(m23, {1})), Classification::mixed},
  };
  for (const auto& c : catalog) {
    const OrientedMapReport r = theorem_suite(c.f);
    INFO(c.f.name());
    CHECK(r.implementation_ok());
    CHECK(r.classification.classification == c.expect);
    const bool iso = c.expect == Classification::vn_isomorphism;
    CHECK(r.preserves_commutators == iso);
    CHECK(r.preserves_orientation_delta == iso);
    CHECK(r.preserves_orientation_flow == iso);
    CHECK(r.context_diagram_ok == iso);
    CHECK(r.presheaf_diagram_ok == iso);
    CHECK(r.context_diagram.ran);
    CHECK(r.presheaf_diagram.ran);
  }
}

TEST_CASE("theorem suite hypotheses and skipped checks") {
  const FdAlgebra cc({1, 1});
  const OrientedMapReport r = theorem_suite(JordanMap::permute_blocks(cc, {1, 0}));
  CHECK(r.warnings.size() >= 2);
  CHECK(r.implementation_ok());
  CHECK(r.classification.classification == Classification::vn_isomorphism);

  const OrientedMapReport bad = theorem_suite(diagonal_compression(FdAlgebra({2})));
  CHECK_FALSE(bad.is_jordan);
  CHECK(bad.classification.classification == Classification::not_jordan);
  CHECK_FALSE(bad.orientation_flow.ran);

  const FdAlgebra m3({3});
  CHECK(theorem_suite(JordanMap::identity(m3)).warnings.empty());
}
