#pragma once

// Checks on linear maps between algebras: Jordan and *-preservation,
// commutators, orientation in derivation, flow, context and presheaf form, and
// classification by the splitting central projection.

#include <optional>
#include <string>
#include <vector>

#include "vna/algebra.hpp"
#include "vna/config.hpp"
#include "vna/contexts.hpp"
#include "vna/derivations.hpp"
#include "vna/jordan_map.hpp"
#include "vna/presheaf.hpp"

namespace vna {

/// The products carried by domain and codomain. Native orientation is c = 1.
struct Orientations {
  DynamicalCorrespondence domain;
  DynamicalCorrespondence codomain;
};
Orientations native_orientations(const JordanMap& f);

/// Indices of the worst case. `a`, `b` index Hermitian basis elements (or a
/// basis element and a fragment node for the diagram checks); `t` is a time.
struct Witness {
  std::size_t a = 0;
  std::size_t b = 0;
  double t = 0.0;
};

struct CheckResult {
  bool ran = false;
  bool passed = true;
  /// Largest relative residual; the diagram checks count mismatched nodes.
  double residual = 0.0;
  Witness witness;

  void record(double r, Witness w) {
    ran = true;
    if (r > residual) {
      residual = r;
      witness = w;
    }
  }
};

struct JordanStarResult {
  CheckResult jordan;
  CheckResult star;
};

/// Jordan: f(a·b) = f(a)·f(b) on all basis pairs. Star: f(e) Hermitian on the basis.
JordanStarResult check_jordan_star(const JordanMap& f, double tol = 1e-9);

/// f([a,b]) = [f(a),f(b)] on all basis pairs, commutators taken in the
/// oriented products.
CheckResult check_commutator_preservation(const JordanMap& f, const Orientations& o,
                                          double tol = 1e-9);
/// f([a,b]) = −[f(a),f(b)] on all basis pairs.
CheckResult check_commutator_reversal(const JordanMap& f, const Orientations& o,
                                      double tol = 1e-9);
/// f(x⋆y) = f(x)⋆f(y) on `samples` random complex pairs.
CheckResult check_multiplicative_sample(const JordanMap& f, const Orientations& o,
                                        double tol = 1e-9, std::uint64_t seed = 1,
                                        int samples = 8);

/// f∘ψ_a = ψ'_{f(a)}∘f for every basis a, evaluated on the basis.
CheckResult check_orientation_delta(const JordanMap& f, const Orientations& o, double tol = 1e-9);

/// f∘e^{tψ_a} = e^{tψ'_{f(a)}}∘f for every basis a and every t, on the basis.
CheckResult check_orientation_flow(const JordanMap& f, const Orientations& o,
                                   const std::vector<double>& times, double tol = 1e-9);

/// f̃(α_t(V)) = α'_t(f̃(V)) for every node V of P and every t, where α is the
/// flow of a and α' the flow of f(a). With `closure`, both sides must be nodes
/// of it and are compared as nodes; escapes throw a domain error.
CheckResult check_context_diagram(const JordanMap& f, const ContextPoset& p, const Element& a,
                                  const std::vector<double>& times, const Orientations& o,
                                  double tol = 1e-9, const ContextPoset* closure = nullptr);

/// Both ways around the presheaf square for one generator pair and time.
/// B is the given fragment of M; A = B ∪ α_t(B), D = f̃(B), C = f̃(A) ∪ α'_t(D)
/// are built so that every induced arrow is defined.
struct PresheafSquare {
  PresheafMorphism domain_flow_first;    // ⟨f̃,G_f⟩ : Σ_N|C → Σ_M|A, then the M-flow A → B
  PresheafMorphism codomain_flow_first;  // the N-flow C → D, then ⟨f̃,G_f⟩ : Σ_N|D → Σ_M|B
  bool commutes = false;
};
PresheafSquare presheaf_square(const JordanMap& f, const Element& a, const Element& b,
                               const ContextPoset& base, double t, const Orientations& o,
                               const SessionConfig& config = {});

/// Every codomain basis element b with a = f⁻¹(b), every t. Throws a numeric
/// error when f is not invertible.
CheckResult check_presheaf_diagram(const JordanMap& f, const ContextPoset& base,
                                   const std::vector<double>& times, const Orientations& o,
                                   const SessionConfig& config = {});

enum class Classification { vn_isomorphism, anti_isomorphism, mixed, jordan_only, not_jordan };
std::string to_string(Classification c);

struct ClassifyResult {
  Classification classification = Classification::not_jordan;
  std::optional<CentralProjection> splitting_c;
  /// Per codomain block: corner multiplicative, corner anti-multiplicative.
  std::vector<bool> multiplicative, anti_multiplicative;
  bool invertible = false;
};

/// Corner tests on every codomain block with 8 random pairs and all basis
/// pairs; each verdict must be unanimous. Throws a numeric error for a corner
/// that is neither multiplicative nor anti-multiplicative.
ClassifyResult classify(const JordanMap& f, const Orientations& o, double tol = 1e-9,
                        std::uint64_t seed = 1);

struct OrientedMapReport {
  std::string map_name;
  FdAlgebra domain{std::vector<int>{1}};
  FdAlgebra codomain{std::vector<int>{1}};
  bool is_jordan = false;
  bool is_star = false;
  bool is_unital = false;
  bool preserves_commutators = false;
  bool preserves_orientation_delta = false;
  bool preserves_orientation_flow = false;
  bool context_diagram_ok = false;
  bool presheaf_diagram_ok = false;
  ClassifyResult classification;

  CheckResult jordan, star, commutators, commutator_reversal, multiplicative, orientation_delta,
      orientation_flow, context_diagram, presheaf_diagram;
  std::size_t fragment_size = 0;

  std::vector<std::string> warnings;
  /// Violated equivalences; each one is a defect of this implementation.
  std::vector<std::string> failures;
  bool implementation_ok() const { return failures.empty(); }
};

/// Runs every check and asserts the equivalences for bijective Jordan *-maps.
/// Without `fragment`, the context checks run on the down-closure of a random
/// maximal context of the domain.
OrientedMapReport theorem_suite(const JordanMap& f, const Orientations& o,
                                const SessionConfig& config = {},
                                const std::optional<ContextPoset>& fragment = std::nullopt);
OrientedMapReport theorem_suite(const JordanMap& f, const SessionConfig& config = {});

/// Atoms u e_ii u* for a random unitary u.
Context random_maximal_context(const FdAlgebra& algebra, std::uint64_t seed);
/// The block-diagonal matrix units e_ii.
Context diagonal_context(const FdAlgebra& algebra);

}  // namespace vna
