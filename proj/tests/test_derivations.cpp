#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "vna/derivations.hpp"
#include "vna/error.hpp"
#include "vna/morphisms.hpp"
#include "vna/random.hpp"

using namespace vna;
using namespace vna::testing;

namespace {

constexpr double pi = std::numbers::pi;

bool same_derivation(const OrderDerivation& a, const OrderDerivation& b, double tol) {
  const HermitianBasis basis(a.algebra());
  for (const auto& e : basis.elements())
    if (distance(a(e), b(e)) > tol) return false;
  for (const auto& e : basis.elements())
    if (distance(a(I * e), b(I * e)) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("order derivations on Pauli matrices") {
  CHECK(delta(sz())(sx()).norm() < 1e-15);
  CHECK(distance(delta(I * sz())(sx()), -sy()) < 1e-15);
  Sampler s(1);
  const Element b = s.element(m2());
  CHECK(distance(delta(one())(b), b) < 1e-15);
  const Element h = s.hermitian(m2());
  CHECK(distance(delta(h)(b), jordan_product(h, b)) < 1e-14);
  CHECK(distance(delta(I * h)(b), (0.5 * I) * commutator(h, b)) < 1e-14);
}

TEST_CASE("self and skew parts") {
  const auto p1 = self_skew_decompose(delta(sz()));
  CHECK(same_derivation(p1.self_part, delta(sz()), 1e-15));
  CHECK(same_derivation(p1.skew_part, delta(Element::zero(m2())), 1e-15));
  const auto p2 = self_skew_decompose(delta(I * sz()));
  CHECK(same_derivation(p2.self_part, delta(Element::zero(m2())), 1e-15));
  CHECK(same_derivation(p2.skew_part, delta(I * sz()), 1e-15));
  const auto p3 = self_skew_decompose(delta(sz() + I * sx()));
  CHECK(same_derivation(p3.self_part, delta(sz()), 1e-15));
  CHECK(same_derivation(p3.skew_part, delta(I * sx()), 1e-15));

  // central imaginary parts drop out without changing the skew derivation
  const FdAlgebra m({2, 3});
  Sampler s(2);
  const Element a = s.element(m);
  const auto p = self_skew_decompose(delta(a));
  CHECK(is_skew(p.skew_part));
  CHECK(std::abs(p.skew_part.generator().block(0).trace()) < 1e-14);
  Element sum = p.self_part.generator() + p.skew_part.generator();
  CHECK(same_derivation(delta(sum), delta(a), 1e-13));
}

TEST_CASE("skewness and the Jordan Leibniz rule") {
  CHECK(is_skew(delta(I * sz())));
  CHECK_FALSE(is_skew(delta(sz())));
  CHECK(is_skew(delta(Element::zero(m2()))));
  CHECK(skew_is_jordan_derivation(delta(I * sz())));
  CHECK(skew_is_jordan_derivation(delta(Element::zero(m2()))));
  const LeibnizReport bad = jordan_leibniz(delta(sz()));
  CHECK_FALSE(bad.holds);
  CHECK(bad.max_residual > 0.1);

  // skew ⇔ Jordan derivation, on random generators
  Sampler s(3);
  const FdAlgebra m({2, 3});
  for (int k = 0; k < 5; ++k) {
    const OrderDerivation skew = delta(I * s.hermitian(m));
    const OrderDerivation mixed = delta(s.element(m));
    CHECK(is_skew(skew) == skew_is_jordan_derivation(skew));
    CHECK(is_skew(mixed) == skew_is_jordan_derivation(mixed));
    CHECK_FALSE(is_skew(mixed));
  }
}

TEST_CASE("exponential of an order derivation") {
  Sampler s(4);
  const FdAlgebra m({2, 3});
  const Element a = s.element(m);
  const OrderDerivation d = delta((1.0 / a.norm()) * a);
  const Element b = s.element(m);
  for (double t : {-1.0, -0.3, 0.0, 0.5, 1.0})
    CHECK(relative_distance(d.exponential(t, b), d.exponential_series(t, b, 30)) < 1e-13);
  // positivity: e^{tδ} maps b*b to a positive element
  const Element pos = d.exponential(0.8, multiply(adjoint(b), b));
  CHECK(pos.is_hermitian(1e-12));
}

TEST_CASE("dynamical correspondences from central projections") {
  const FdAlgebra m = m2();
  const DynamicalCorrespondence native = dc_from_product(CentralProjection::unit(m));
  const DynamicalCorrespondence opposite = dc_from_product(CentralProjection::zero(m));
  CHECK(distance(native.apply(sz(), sx()), -sy()) < 1e-15);
  CHECK(distance(opposite.apply(sz(), sx()), sy()) < 1e-15);
  CHECK(distance(native.psi(sz())(sx()), native.apply(sz(), sx())) < 1e-15);
  CHECK(distance(opposite.psi(sz())(sx()), opposite.apply(sz(), sx())) < 1e-15);

  const FdAlgebra mm({2, 3});
  Sampler s(6);
  const Element b = s.element(mm);
  for (const auto& c : central_projections(mm))
    CHECK(dc_from_product(c).psi(Element::identity(mm))(b).norm() < 1e-14);

  CHECK_THROWS_AS(dc_from_product(m, sz()), Error);
  CHECK_NOTHROW(dc_from_product(m, one()));
}

TEST_CASE("axioms hold for every product-derived correspondence") {
  for (const auto& m : {FdAlgebra({2}), FdAlgebra({3}), FdAlgebra({2, 3}), FdAlgebra({1, 2})})
    for (const auto& c : central_projections(m)) {
      const DcAxiomReport r = check_dc_axioms(dc_from_product(c), 1e-9, 7);
      CHECK(r.passed());
      CHECK(r.residual_i < 1e-12);
      CHECK(r.residual_ii < 1e-12);
    }
}

TEST_CASE("a perturbed assignment violates axiom (ii)") {
  const FdAlgebra m = m2();
  const DynamicalCorrespondence native = native_dc(m);
  const Element g = I * sy();  // a fixed skew derivation δ_{iσ_y}
  const double eps = 1e-3;
  const DerivationAssignment perturbed = [&](const Element& a) {
    return delta(native.psi(a).generator() + eps * g);
  };
  const DcAxiomReport r = check_dc_axioms(m, perturbed, 1e-9, 7);
  CHECK(r.skew_valued);
  CHECK_FALSE(r.axiom_ii);
  CHECK_FALSE(r.passed());
  // ψ'_{σ_x}(σ_x) = ε·(i/2)[σ_y, σ_x] = ε·σ_z
  CHECK(distance(perturbed(sx())(sx()), eps * sz()) < 1e-15);
}

TEST_CASE("a rescaled assignment violates axiom (i) only") {
  // ψ_a = δ_{2ia}: still skew with ψ_a a = 0, but [ψ_a,ψ_b] = −4[δ_a,δ_b]
  const FdAlgebra m({2, 3});
  const DerivationAssignment doubled = [](const Element& a) { return delta((2.0 * I) * a); };
  const DcAxiomReport r = check_dc_axioms(m, doubled, 1e-9, 7);
  CHECK(r.skew_valued);
  CHECK(r.axiom_ii);
  CHECK_FALSE(r.axiom_i);
  CHECK(r.residual_i > 0.1);
}

TEST_CASE("products reconstructed from correspondences") {
  Sampler s(8);
  for (const auto& m : {FdAlgebra({2}), FdAlgebra({2, 3})}) {
    const HermitianBasis basis(m);
    for (const auto& c : central_projections(m)) {
      const ReconstructedProduct prod = product_from_dc(dc_from_product(c));
      double worst = 0.0;
      for (const auto& x : basis.elements())
        for (const auto& y : basis.elements())
          worst = std::max(worst, distance(prod(x, y), twisted_multiply(x, y, c)));
      CHECK(worst < 1e-12);
      const Element x = s.element(m), y = s.element(m);
      CHECK(relative_distance(prod(x, y), twisted_multiply(x, y, c)) < 1e-13);
      CHECK(distance(prod(Element::identity(m), y), y) < 1e-13);
    }
  }
  const ReconstructedProduct opp = product_from_dc(dc_from_product(CentralProjection::zero(m2())));
  CHECK(distance(opp(sx(), sy()), multiply(sy(), sx())) < 1e-15);
}

TEST_CASE("inner flows on Pauli matrices") {
  const FdAlgebra m = m2();
  const InnerFlow up = flow(sz(), native_dc(m));
  const InnerFlow down = flow(sz(), dc_from_product(CentralProjection::zero(m)));
  CHECK(distance(up(pi, sx()), -sx()) < 1e-14);
  CHECK(distance(down(pi, sx()), -sx()) < 1e-14);
  CHECK(distance(up(pi / 2, sx()), -sy()) < 1e-14);
  CHECK(distance(down(pi / 2, sx()), sy()) < 1e-14);
  CHECK(distance(up(0.0, sx()), sx()) < 1e-15);
  // u_{t/2} = diag(e^{it/2}, e^{−it/2})
  const Element u = up.unitary(pi);
  CHECK(std::abs(u.block(0)(0, 0) - I) < 1e-15);
  CHECK_THROWS_AS(flow(I * sz(), native_dc(m)), Error);
}

TEST_CASE("flows: series, derivative, group law") {
  Sampler s(9);
  const FdAlgebra m({2, 3});
  for (const auto& c : central_projections(m)) {
    const DynamicalCorrespondence dc(c);
    const Element a = s.hermitian_with_norm(m, 1.0);
    const InnerFlow fl = flow(a, dc);
    const OrderDerivation psi = dc.psi(a);
    const Element b = s.element(m);
    for (double t : {-1.0, -0.5, 0.25, 1.0})
      CHECK(relative_distance(fl(t, b), psi.exponential_series(t, b, 11)) < 1e-8);
    const double h = 1e-5;
    const Element fd = (1.0 / (2 * h)) * (fl(h, b) - fl(-h, b));
    CHECK(relative_distance(fd, psi(b)) < 1e-8);
    for (double t1 : SessionConfig::default_time_grid())
      for (double t2 : SessionConfig::default_time_grid())
        CHECK(relative_distance(fl(t1, fl(t2, b)), fl(t1 + t2, b)) < 1e-12);
  }
}

TEST_CASE("flows on contexts and on the presheaf") {
  const FdAlgebra m = m2();
  const ContextPoset diag = poset_fragment({diagonal_context(m)});
  const InnerFlow fz = flow(sz(), native_dc(m));
  for (double t : {0.3, 1.0, pi})
    CHECK(flow_on_contexts(fz, diag, t) == identity_order_map(diag.size()));

  const InnerFlow fx = flow(sx(), native_dc(m));
  CHECK(flow_on_contexts(fx, diag, 0.0) == identity_order_map(diag.size()));
  CHECK_THROWS_AS(flow_on_contexts(fx, diag, 1.0), Error);
  // with the t = 1 image added, the flow moves diag onto the new node
  std::vector<Context> nodes = diag.nodes();
  nodes.push_back(conjugate_context(diagonal_context(m), fx.unitary(1.0)));
  const ContextPoset ext = ContextPoset::from_nodes(nodes);
  REQUIRE(ext.size() == 3);
  const std::vector<Context> moved{conjugate_context(ext.node(0), fx.unitary(1.0)),
                                   conjugate_context(ext.node(1), fx.unitary(1.0))};
  const OrderMap om = locate_images(moved, ext);
  CHECK(om(*ext.find(diagonal_context(m))) == 2);

  const FragmentPtr p = build_presheaf(diag);
  CHECK(same_morphism(flow_on_presheaf(fz, p, 0.0), identity_morphism(p)));
  CHECK(same_morphism(flow_on_presheaf(fz, p, 0.7), identity_morphism(p)));

  // central generators act trivially at every time
  const FdAlgebra mm({2, 3});
  const Element central = Element::in_block(mm, 0, 2.0 * Matrix::Identity(2, 2)) +
                          Element::in_block(mm, 1, -1.0 * Matrix::Identity(3, 3));
  const FragmentPtr q = build_presheaf(poset_fragment({random_maximal_context(mm, 3)}));
  const InnerFlow fc = flow(central, native_dc(mm));
  for (double t : SessionConfig::default_time_grid())
    CHECK(same_morphism(flow_on_presheaf(fc, q, t), identity_morphism(q)));

  // group law on a fragment closed under the flow: a σ_z generator on M2+M3
  const Element gz = Element::in_block(mm, 0, sz().block(0));
  const ContextPoset zfrag = poset_fragment({diagonal_context(mm)});
  const FragmentPtr zp = build_presheaf(zfrag);
  const InnerFlow fgz = flow(gz, native_dc(mm));
  const PresheafMorphism a1 = flow_on_presheaf(fgz, zp, 0.4);
  const PresheafMorphism a2 = flow_on_presheaf(fgz, zp, 0.9);
  CHECK(same_morphism(compose(a1, a2), flow_on_presheaf(fgz, zp, 1.3)));
}

TEST_CASE("flow group law on the Pauli-axis fragment") {
  const FdAlgebra m = m2();
  const Context zc = diagonal_context(m);
  const Context xc = context_from_commuting(m, {sx()});
  const Context yc = context_from_commuting(m, {sy()});
  const ContextPoset axes = poset_fragment({zc, xc, yc});
  REQUIRE(axes.size() == 4);
  const FragmentPtr p = build_presheaf(axes);
  const InnerFlow fx = flow(sx(), native_dc(m));

  const PresheafMorphism quarter = flow_on_presheaf(fx, p, pi / 2);
  const PresheafMorphism half = flow_on_presheaf(fx, p, pi);
  const std::size_t iz = *axes.find(zc), iy = *axes.find(yc), ix = *axes.find(xc);
  CHECK(quarter.base_map(iz) == iy);
  CHECK(quarter.base_map(iy) == iz);
  CHECK(quarter.base_map(ix) == ix);
  // rotation by π about x swaps e11 and e22
  CHECK(half.base_map(iz) == iz);
  CHECK(half.components[iz] == CharacterMap{1, 0});
  CHECK(same_morphism(compose(quarter, quarter), half));
  CHECK(same_morphism(compose(half, half), identity_morphism(p)));
  CHECK(is_isomorphism(quarter));
  CHECK(flow_on_contexts(fx, axes, pi / 2) == quarter.base_map);
}
