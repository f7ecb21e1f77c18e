#include "vna/derivations.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "vna/error.hpp"
#include "vna/random.hpp"

namespace vna {

Element OrderDerivation::operator()(const Element& b) const {
  return 0.5 * (multiply(generator_, b) + multiply(b, adjoint(generator_)));
}

Element OrderDerivation::exponential(double t, const Element& b) const {
  require_same_algebra(generator_, b, "OrderDerivation::exponential");
  std::vector<Matrix> left;
  for (const auto& g : generator_.blocks()) left.push_back(Matrix((0.5 * t * g).exp()));
  const Element l(generator_.algebra(), std::move(left));
  return multiply(multiply(l, b), adjoint(l));
}

Element OrderDerivation::exponential_series(double t, const Element& b, int terms) const {
  Element term = b;
  Element sum = b;
  for (int k = 1; k <= terms; ++k) {
    term = (t / k) * (*this)(term);
    sum += term;
  }
  return sum;
}

OrderDerivation delta(const Element& a) { return OrderDerivation(a); }

namespace {

// Removes the blockwise-trace (central) component of a Hermitian element.
Element drop_central_part(const Element& k) {
  std::vector<Matrix> blocks = k.blocks();
  for (auto& b : blocks) {
    const Complex mean = b.trace() / static_cast<double>(b.rows());
    b -= mean * Matrix::Identity(b.rows(), b.cols());
  }
  return {k.algebra(), std::move(blocks)};
}

}  // namespace

SelfSkewParts self_skew_decompose(const OrderDerivation& d) {
  const Element h = hermitian_part(d.generator());
  const Element k = drop_central_part(imaginary_part(d.generator()));
  return {delta(h), delta(I * k)};
}

bool is_skew(const OrderDerivation& d, double tol) {
  return d(Element::identity(d.algebra())).norm() <= tol * std::max(1.0, d.generator().norm());
}

LeibnizReport jordan_leibniz(const OrderDerivation& d, double tol) {
  const HermitianBasis basis(d.algebra());
  LeibnizReport r;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Element da = d(basis[i]);
    for (std::size_t j = i; j < basis.size(); ++j) {
      const Element lhs = d(jordan_product(basis[i], basis[j]));
      const Element rhs = jordan_product(da, basis[j]) + jordan_product(basis[i], d(basis[j]));
      const double res = distance(lhs, rhs);
      if (res > r.max_residual) {
        r.max_residual = res;
        r.witness_a = i;
        r.witness_b = j;
      }
    }
  }
  r.holds = r.max_residual <= tol * std::max(1.0, d.generator().norm());
  return r;
}

bool skew_is_jordan_derivation(const OrderDerivation& d, double tol) {
  return jordan_leibniz(d, tol).holds;
}

// ---------------------------------------------------------------------------

Element DynamicalCorrespondence::apply(const Element& a, const Element& b) const {
  return (0.5 * I) * (product(a, b) - product(b, a));
}

OrderDerivation DynamicalCorrespondence::psi(const Element& a) const {
  return delta(I * multiply(c_.symmetry(), a));
}

DerivationAssignment DynamicalCorrespondence::assignment() const {
  return [self = *this](const Element& a) { return self.psi(a); };
}

DynamicalCorrespondence dc_from_product(const FdAlgebra& algebra, const Element& c, double tol) {
  if (!(c.algebra() == algebra)) throw structural_error("dc_from_product: foreign projection");
  return DynamicalCorrespondence(CentralProjection::from_element(c, tol));
}

DynamicalCorrespondence dc_from_product(const CentralProjection& c) {
  return DynamicalCorrespondence(c);
}

DynamicalCorrespondence native_dc(const FdAlgebra& algebra) {
  return DynamicalCorrespondence(CentralProjection::unit(algebra));
}

DcAxiomReport check_dc_axioms(const FdAlgebra& algebra, const DerivationAssignment& psi,
                              double tol, std::uint64_t seed, int samples) {
  const HermitianBasis basis(algebra);
  const std::size_t d = basis.size();
  std::vector<OrderDerivation> psis, deltas;
  for (const auto& e : basis.elements()) {
    psis.push_back(psi(e));
    deltas.push_back(delta(e));
  }

  DcAxiomReport r;
  const Element one = Element::identity(algebra);
  for (const auto& p : psis) r.residual_skew = std::max(r.residual_skew, p(one).norm());

  // (i): [ψ_a, ψ_b] + [δ_a, δ_b] = 0 pointwise on the basis.
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      for (const auto& x : basis.elements()) {
        const Element lhs = psis[a](psis[b](x)) - psis[b](psis[a](x));
        const Element rhs = deltas[a](deltas[b](x)) - deltas[b](deltas[a](x));
        r.residual_i = std::max(r.residual_i, (lhs + rhs).norm());
      }
    }
  }

  // (ii): polarized on the basis, then direct on samples.
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b)
      r.residual_ii =
          std::max(r.residual_ii, (psis[a](basis[b]) + psis[b](basis[a])).norm());
  Sampler sampler(seed);
  for (int s = 0; s < samples; ++s) {
    const Element a = sampler.hermitian_with_norm(algebra, 1.0);
    r.residual_ii = std::max(r.residual_ii, psi(a)(a).norm());
  }

  r.axiom_i = r.residual_i <= tol;
  r.axiom_ii = r.residual_ii <= tol;
  r.skew_valued = r.residual_skew <= tol;
  return r;
}

DcAxiomReport check_dc_axioms(const DynamicalCorrespondence& psi, double tol, std::uint64_t seed,
                              int samples) {
  return check_dc_axioms(psi.algebra(), psi.assignment(), tol, seed, samples);
}

Element ReconstructedProduct::hermitian_product(const Element& a, const Element& b) const {
  return jordan_product(a, b) - I * psi_(a)(b);
}

Element ReconstructedProduct::operator()(const Element& x, const Element& y) const {
  require_same_algebra(x, y, "ReconstructedProduct");
  const Element x1 = hermitian_part(x), x2 = imaginary_part(x);
  const Element y1 = hermitian_part(y), y2 = imaginary_part(y);
  return hermitian_product(x1, y1) + I * hermitian_product(x1, y2) +
         I * hermitian_product(x2, y1) - hermitian_product(x2, y2);
}

ReconstructedProduct product_from_dc(const DynamicalCorrespondence& psi) {
  return ReconstructedProduct(psi.algebra(), psi.assignment());
}

// ---------------------------------------------------------------------------

InnerFlow::InnerFlow(Element generator, DynamicalCorrespondence orientation, double tol)
    : generator_(std::move(generator)),
      oriented_(Element::zero(generator_.algebra())),
      orientation_(std::move(orientation)),
      eig_{generator_.algebra(), {}} {
  if (!(orientation_.algebra() == generator_.algebra()))
    throw structural_error("flow: orientation belongs to another algebra");
  if (!generator_.is_hermitian(tol)) throw domain_error("flow: generator is not Hermitian");
  oriented_ = hermitian_part(multiply(orientation_.orientation().symmetry(), generator_));
  eig_ = hermitian_eig(oriented_, tol);
}

Element InnerFlow::unitary(double t) const {
  const double s = 0.5 * t;
  return eig_.apply_function([s](double x) { return std::exp(I * (s * x)); });
}

Element InnerFlow::operator()(double t, const Element& b) const {
  const Element u = unitary(t);
  return multiply(multiply(u, b), adjoint(u));
}

JordanMap InnerFlow::slice(double t) const { return JordanMap::adjoint_action(unitary(t)); }

InnerFlow flow(const Element& a, const DynamicalCorrespondence& psi, double tol) {
  return InnerFlow(a, psi, tol);
}

OrderMap flow_on_contexts(const InnerFlow& fl, const ContextPoset& p, double t) {
  const Element u = fl.unitary(t);
  std::vector<Context> images;
  for (const auto& v : p.nodes()) images.push_back(conjugate_context(v, u, p.tolerance()));
  return locate_images(images, p);
}

PresheafMorphism flow_on_presheaf(const InnerFlow& fl, const FragmentPtr& p, double t) {
  return induced_presheaf_morphism(fl.slice(t), p, p);
}

}  // namespace vna
