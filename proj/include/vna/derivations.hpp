#pragma once

// Order derivations δ_a(b) = ½(ab + ba*), dynamical correspondences, the
// c-indexed family of associative products, and inner flows.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vna/algebra.hpp"
#include "vna/config.hpp"
#include "vna/contexts.hpp"
#include "vna/jordan_map.hpp"
#include "vna/presheaf.hpp"
#include "vna/spectral.hpp"

namespace vna {

class OrderDerivation {
 public:
  explicit OrderDerivation(Element generator) : generator_(std::move(generator)) {}

  const Element& generator() const noexcept { return generator_; }
  const FdAlgebra& algebra() const noexcept { return generator_.algebra(); }

  /// ½(ab + ba*).
  Element operator()(const Element& b) const;

  /// e^{tδ}(b) = e^{ta/2} b e^{ta*/2}; left and right multiplication commute.
  Element exponential(double t, const Element& b) const;

  /// Σ_{k≤terms} (tδ)^k b / k!.
  Element exponential_series(double t, const Element& b, int terms) const;

 private:
  Element generator_;
};

/// δ_a.
OrderDerivation delta(const Element& a);

/// a = h + ik with h, k Hermitian; k has its central (blockwise trace) part
/// removed, which changes nothing since δ_{iz} = 0 for central z.
struct SelfSkewParts {
  OrderDerivation self_part;
  OrderDerivation skew_part;
};
SelfSkewParts self_skew_decompose(const OrderDerivation& d);

/// δ(1) = 0 to `tol`.
bool is_skew(const OrderDerivation& d, double tol = 1e-9);

/// Leibniz rule for the Jordan product on all pairs of the Hermitian basis.
struct LeibnizReport {
  bool holds = true;
  double max_residual = 0.0;
  std::size_t witness_a = 0, witness_b = 0;
};
LeibnizReport jordan_leibniz(const OrderDerivation& d, double tol = 1e-9);
bool skew_is_jordan_derivation(const OrderDerivation& d, double tol = 1e-9);

/// Any assignment a ↦ ψ_a of derivations to Hermitian elements.
using DerivationAssignment = std::function<OrderDerivation(const Element&)>;

/// The correspondence a ↦ ψ_a with ψ_a(b) = (i/2)(a⋆b − b⋆a) for the product
/// a⋆b = cab + (1−c)ba. c = 1 is the algebra's own product.
class DynamicalCorrespondence {
 public:
  explicit DynamicalCorrespondence(CentralProjection c) : c_(std::move(c)) {}

  const FdAlgebra& algebra() const noexcept { return c_.algebra(); }
  const CentralProjection& orientation() const noexcept { return c_; }

  /// ψ_a(b) through the twisted commutator.
  Element apply(const Element& a, const Element& b) const;
  /// ψ_a as an order derivation: δ_{i z a} with z = 2c − 1.
  OrderDerivation psi(const Element& a) const;
  DerivationAssignment assignment() const;

  /// a⋆b.
  Element product(const Element& a, const Element& b) const { return twisted_multiply(a, b, c_); }

 private:
  CentralProjection c_;
};

/// Throws a domain error unless c is a central projection of M.
DynamicalCorrespondence dc_from_product(const FdAlgebra& algebra, const Element& c,
                                        double tol = 1e-9);
DynamicalCorrespondence dc_from_product(const CentralProjection& c);
DynamicalCorrespondence native_dc(const FdAlgebra& algebra);

struct DcAxiomReport {
  bool axiom_i = true;   // [ψ_a, ψ_b] = −[δ_a, δ_b]
  bool axiom_ii = true;  // ψ_a a = 0
  bool skew_valued = true;
  double residual_i = 0.0;
  double residual_ii = 0.0;
  double residual_skew = 0.0;
  bool passed() const { return axiom_i && axiom_ii && skew_valued; }
};

/// Axiom (i) as operator equality on every pair of basis elements, applied to
/// every basis element. Axiom (ii) on the basis, in polarized form
/// ψ_a b + ψ_b a = 0 on basis pairs, and on `samples` random Hermitians.
DcAxiomReport check_dc_axioms(const FdAlgebra& algebra, const DerivationAssignment& psi,
                              double tol = 1e-9, std::uint64_t seed = 1, int samples = 16);
DcAxiomReport check_dc_axioms(const DynamicalCorrespondence& psi, double tol = 1e-9,
                              std::uint64_t seed = 1, int samples = 16);

/// a∘b = a·b − iψ_a(b) on Hermitians, extended complex-bilinearly.
class ReconstructedProduct {
 public:
  ReconstructedProduct(FdAlgebra algebra, DerivationAssignment psi)
      : algebra_(std::move(algebra)), psi_(std::move(psi)) {}

  Element operator()(const Element& x, const Element& y) const;

 private:
  Element hermitian_product(const Element& a, const Element& b) const;

  FdAlgebra algebra_;
  DerivationAssignment psi_;
};

ReconstructedProduct product_from_dc(const DynamicalCorrespondence& psi);

/// t ↦ e^{tψ_a}: b ↦ u_{t/2} b u_{−t/2} with u_s = e^{is·za}, z = 2c − 1 the
/// orientation's central symmetry.
class InnerFlow {
 public:
  InnerFlow(Element generator, DynamicalCorrespondence orientation, double tol = 1e-9);

  const Element& generator() const noexcept { return generator_; }
  const DynamicalCorrespondence& orientation() const noexcept { return orientation_; }
  const FdAlgebra& algebra() const noexcept { return generator_.algebra(); }

  /// u_{t/2}.
  Element unitary(double t) const;
  Element operator()(double t, const Element& b) const;
  /// The time-t automorphism as a map.
  JordanMap slice(double t) const;

 private:
  Element generator_;
  Element oriented_;  // z·a
  DynamicalCorrespondence orientation_;
  HermitianEigensystem eig_;
};

/// Throws a domain error when a is not Hermitian.
InnerFlow flow(const Element& a, const DynamicalCorrespondence& psi, double tol = 1e-9);

/// Nodewise conjugation; throws a domain error listing nodes whose image leaves P.
OrderMap flow_on_contexts(const InnerFlow& fl, const ContextPoset& p, double t);

/// induced_presheaf_morphism of the time-t slice, with P as both fragments.
PresheafMorphism flow_on_presheaf(const InnerFlow& fl, const FragmentPtr& p, double t);

}  // namespace vna
