#include "vna/morphisms.hpp"

#include <algorithm>
#include <cmath>

#include "vna/error.hpp"
#include "vna/random.hpp"
#include "vna/spectral.hpp"

namespace vna {

Orientations native_orientations(const JordanMap& f) {
  return {native_dc(f.domain()), native_dc(f.codomain())};
}

namespace {

void require_orientations(const JordanMap& f, const Orientations& o) {
  if (!(o.domain.algebra() == f.domain()) || !(o.codomain.algebra() == f.codomain()))
    throw structural_error("orientations do not match the algebras of " + f.name());
}

void finish(CheckResult& r, double tol) {
  r.ran = true;
  r.passed = r.residual <= tol;
}

// ‖x − y‖ relative to the size of the ingredients.
double rel(const Element& x, const Element& y, double scale) {
  return distance(x, y) / std::max({1.0, scale, x.norm(), y.norm()});
}

Element oriented_commutator(const DynamicalCorrespondence& d, const Element& x, const Element& y) {
  return d.product(x, y) - d.product(y, x);
}

CheckResult commutator_check(const JordanMap& f, const Orientations& o, double tol, double sign) {
  require_orientations(f, o);
  const HermitianBasis basis(f.domain());
  const auto& img = f.basis_images();
  CheckResult r;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Element lhs = f(oriented_commutator(o.domain, basis[i], basis[j]));
      const Element rhs = sign * oriented_commutator(o.codomain, img[i], img[j]);
      r.record(rel(lhs, rhs, img[i].norm() * img[j].norm()), {i, j, 0.0});
    }
  finish(r, tol);
  return r;
}

}  // namespace

JordanStarResult check_jordan_star(const JordanMap& f, double tol) {
  const HermitianBasis basis(f.domain());
  const auto& img = f.basis_images();
  JordanStarResult r;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    r.star.record(rel(img[i], adjoint(img[i]), 0.0), {i, i, 0.0});
    for (std::size_t j = i; j < basis.size(); ++j) {
      const Element lhs = f(jordan_product(basis[i], basis[j]));
      const Element rhs = jordan_product(img[i], img[j]);
      r.jordan.record(rel(lhs, rhs, img[i].norm() * img[j].norm()), {i, j, 0.0});
    }
  }
  finish(r.jordan, tol);
  finish(r.star, tol);
  return r;
}

CheckResult check_commutator_preservation(const JordanMap& f, const Orientations& o, double tol) {
  return commutator_check(f, o, tol, 1.0);
}

CheckResult check_commutator_reversal(const JordanMap& f, const Orientations& o, double tol) {
  return commutator_check(f, o, tol, -1.0);
}

CheckResult check_multiplicative_sample(const JordanMap& f, const Orientations& o, double tol,
                                        std::uint64_t seed, int samples) {
  require_orientations(f, o);
  Sampler sampler(seed);
  CheckResult r;
  for (int s = 0; s < samples; ++s) {
    const Element x = sampler.element(f.domain());
    const Element y = sampler.element(f.domain());
    const Element fx = f(x), fy = f(y);
    const Element lhs = f(o.domain.product(x, y));
    const Element rhs = o.codomain.product(fx, fy);
    r.record(rel(lhs, rhs, fx.norm() * fy.norm()),
             {static_cast<std::size_t>(s), static_cast<std::size_t>(s), 0.0});
  }
  finish(r, tol);
  return r;
}

CheckResult check_orientation_delta(const JordanMap& f, const Orientations& o, double tol) {
  require_orientations(f, o);
  const HermitianBasis basis(f.domain());
  const auto& img = f.basis_images();
  CheckResult r;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const OrderDerivation psi = o.domain.psi(basis[a]);
    const OrderDerivation psi_f = o.codomain.psi(img[a]);
    for (std::size_t b = 0; b < basis.size(); ++b)
      r.record(rel(f(psi(basis[b])), psi_f(img[b]), img[a].norm() * img[b].norm()), {a, b, 0.0});
  }
  finish(r, tol);
  return r;
}

CheckResult check_orientation_flow(const JordanMap& f, const Orientations& o,
                                   const std::vector<double>& times, double tol) {
  require_orientations(f, o);
  const HermitianBasis basis(f.domain());
  const auto& img = f.basis_images();
  CheckResult r;
  r.ran = true;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const InnerFlow flow_m(basis[a], o.domain, tol);
    const InnerFlow flow_n(img[a], o.codomain, tol);
    for (double t : times) {
      const Element u = flow_m.unitary(t), u_star = adjoint(u);
      const Element v = flow_n.unitary(t), v_star = adjoint(v);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const Element lhs = f(multiply(multiply(u, basis[b]), u_star));
        const Element rhs = multiply(multiply(v, img[b]), v_star);
        r.record(rel(lhs, rhs, img[b].norm()), {a, b, t});
      }
    }
  }
  finish(r, tol);
  return r;
}

CheckResult check_context_diagram(const JordanMap& f, const ContextPoset& p, const Element& a,
                                  const std::vector<double>& times, const Orientations& o,
                                  double tol, const ContextPoset* closure) {
  require_orientations(f, o);
  const InnerFlow flow_m(a, o.domain, tol);
  const InnerFlow flow_n(hermitian_part(f(a)), o.codomain, tol);
  const double ctol = p.tolerance();
  std::vector<Context> images;
  for (const auto& v : p.nodes()) images.push_back(image_context(f, v, ctol));

  CheckResult r;
  r.ran = true;
  bool first = true;
  for (double t : times) {
    const Element u = flow_m.unitary(t);
    const Element v = flow_n.unitary(t);
    std::vector<Context> lhs, rhs;
    for (std::size_t k = 0; k < p.size(); ++k) {
      lhs.push_back(image_context(f, conjugate_context(p.node(k), u, ctol), ctol));
      rhs.push_back(conjugate_context(images[k], v, ctol));
    }
    std::vector<char> agree(p.size(), 1);
    if (closure) {
      const OrderMap l = locate_images(lhs, *closure);
      const OrderMap rr = locate_images(rhs, *closure);
      for (std::size_t k = 0; k < p.size(); ++k) agree[k] = l(k) == rr(k);
    } else {
      for (std::size_t k = 0; k < p.size(); ++k) agree[k] = same_context(lhs[k], rhs[k], ctol);
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (agree[k]) continue;
      if (first) r.witness = {0, k, t};
      first = false;
      r.residual += 1.0;
    }
  }
  r.passed = r.residual == 0.0;
  return r;
}

PresheafSquare presheaf_square(const JordanMap& f, const Element& a, const Element& b,
                               const ContextPoset& base, double t, const Orientations& o,
                               const SessionConfig& config) {
  require_orientations(f, o);
  const double tol = config.tolerance;
  const InnerFlow flow_m(a, o.domain, tol);
  const InnerFlow flow_n(b, o.codomain, tol);
  const JordanMap alpha = flow_m.slice(t);
  const JordanMap beta = flow_n.slice(t);
  const double ctol = base.tolerance();

  std::vector<Context> a_nodes = base.nodes();
  for (const auto& v : base.nodes()) a_nodes.push_back(image_context(alpha, v, ctol));
  const ContextPoset A = ContextPoset::from_nodes(a_nodes, ctol, config.node_cap);

  std::vector<Context> d_nodes;
  for (const auto& v : base.nodes()) d_nodes.push_back(image_context(f, v, ctol));
  const ContextPoset D = ContextPoset::from_nodes(d_nodes, ctol, config.node_cap);

  std::vector<Context> c_nodes;
  for (const auto& v : A.nodes()) c_nodes.push_back(image_context(f, v, ctol));
  for (const auto& v : D.nodes()) c_nodes.push_back(image_context(beta, v, ctol));
  const ContextPoset C = ContextPoset::from_nodes(c_nodes, ctol, config.node_cap);

  const FragmentPtr pa = build_presheaf(A), pb = build_presheaf(base);
  const FragmentPtr pc = build_presheaf(C), pd = build_presheaf(D);

  PresheafSquare sq{
      compose(induced_presheaf_morphism(alpha, pb, pa), induced_presheaf_morphism(f, pa, pc)),
      compose(induced_presheaf_morphism(f, pb, pd), induced_presheaf_morphism(beta, pd, pc)),
      false};
  sq.commutes = same_morphism(sq.domain_flow_first, sq.codomain_flow_first);
  return sq;
}

CheckResult check_presheaf_diagram(const JordanMap& f, const ContextPoset& base,
                                   const std::vector<double>& times, const Orientations& o,
                                   const SessionConfig& config) {
  const JordanMap inv = f.inverse();
  const HermitianBasis basis(f.codomain());
  CheckResult r;
  r.ran = true;
  bool first = true;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Element a = hermitian_part(inv(basis[k]));
    for (double t : times) {
      const PresheafSquare sq = presheaf_square(f, a, basis[k], base, t, o, config);
      if (sq.commutes) continue;
      if (first) {
        std::size_t node = 0;
        const auto& m1 = sq.domain_flow_first;
        const auto& m2 = sq.codomain_flow_first;
        for (std::size_t j = 0; j < m1.base_map.size(); ++j)
          if (m1.base_map(j) != m2.base_map(j) || m1.components[j] != m2.components[j]) {
            node = j;
            break;
          }
        r.witness = {k, node, t};
      }
      first = false;
      r.residual += 1.0;
    }
  }
  r.passed = r.residual == 0.0;
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(Classification c) {
  switch (c) {
    case Classification::vn_isomorphism: return "vn_isomorphism";
    case Classification::anti_isomorphism: return "anti_isomorphism";
    case Classification::mixed: return "mixed";
    case Classification::jordan_only: return "jordan_only";
    case Classification::not_jordan: return "not_jordan";
  }
  return "unknown";
}

ClassifyResult classify(const JordanMap& f, const Orientations& o, double tol,
                        std::uint64_t seed) {
  require_orientations(f, o);
  ClassifyResult out;
  const JordanStarResult js = check_jordan_star(f, tol);
  if (!js.jordan.passed || !js.star.passed) return out;
  try {
    (void)f.inverse();
    out.invertible = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::numeric) throw;
  }

  const HermitianBasis basis(f.domain());
  std::vector<std::pair<Element, Element>> pairs;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) pairs.emplace_back(basis[i], basis[j]);
  Sampler sampler(seed);
  for (int s = 0; s < 8; ++s) {
    Element x = sampler.element(f.domain());
    Element y = sampler.element(f.domain());
    pairs.emplace_back(std::move(x), std::move(y));
  }

  const FdAlgebra& cod = f.codomain();
  std::vector<double> mult_res(cod.num_blocks(), 0.0), anti_res(cod.num_blocks(), 0.0);
  for (const auto& [x, y] : pairs) {
    const Element fx = f(x), fy = f(y);
    const Element fxy = f(o.domain.product(x, y));
    const Element m = o.codomain.product(fx, fy);
    const Element n = o.codomain.product(fy, fx);
    const double scale = std::max(1.0, fx.norm() * fy.norm());
    for (std::size_t j = 0; j < cod.num_blocks(); ++j) {
      mult_res[j] = std::max(mult_res[j], (fxy.block(j) - m.block(j)).norm() / scale);
      anti_res[j] = std::max(anti_res[j], (fxy.block(j) - n.block(j)).norm() / scale);
    }
  }

  std::vector<bool> mask(cod.num_blocks());
  bool all_one = true, noncommutative = false, anti_everywhere = true;
  for (std::size_t j = 0; j < cod.num_blocks(); ++j) {
    const bool mul = mult_res[j] <= tol, anti = anti_res[j] <= tol;
    out.multiplicative.push_back(mul);
    out.anti_multiplicative.push_back(anti);
    if (cod.block_is_abelian(j) || mul) {
      mask[j] = true;
    } else if (anti) {
      mask[j] = false;
    } else {
      throw numeric_error("classify: block " + std::to_string(j) + " of " + f.name() +
                          " is neither multiplicative nor anti-multiplicative (residuals " +
                          std::to_string(mult_res[j]) + ", " + std::to_string(anti_res[j]) + ")");
    }
    all_one = all_one && mask[j];
    if (!cod.block_is_abelian(j)) {
      noncommutative = true;
      anti_everywhere = anti_everywhere && !mask[j];
    }
  }
  out.splitting_c = CentralProjection(cod, mask);
  if (!out.invertible)
    out.classification = Classification::jordan_only;
  else if (all_one)
    out.classification = Classification::vn_isomorphism;
  else if (noncommutative && anti_everywhere)
    out.classification = Classification::anti_isomorphism;
  else
    out.classification = Classification::mixed;
  return out;
}

// ---------------------------------------------------------------------------

Context random_maximal_context(const FdAlgebra& algebra, std::uint64_t seed) {
  Sampler sampler(seed);
  const Element u = sampler.unitary(algebra);
  const Element u_star = adjoint(u);
  std::vector<Element> atoms;
  for (std::size_t j = 0; j < algebra.num_blocks(); ++j)
    for (int i = 0; i < algebra.block_dim(j); ++i)
      atoms.push_back(multiply(multiply(u, Element::matrix_unit(algebra, j, i, i)), u_star));
  return Context(algebra, std::move(atoms), 1e-9);
}

Context diagonal_context(const FdAlgebra& algebra) {
  std::vector<Element> atoms;
  for (std::size_t j = 0; j < algebra.num_blocks(); ++j)
    for (int i = 0; i < algebra.block_dim(j); ++i)
      atoms.push_back(Element::matrix_unit(algebra, j, i, i));
  return Context(algebra, std::move(atoms), 1e-9);
}

OrientedMapReport theorem_suite(const JordanMap& f, const Orientations& o,
                                const SessionConfig& config,
                                const std::optional<ContextPoset>& fragment) {
  config.validate();
  require_orientations(f, o);
  const double tol = config.tolerance;
  OrientedMapReport r;
  r.map_name = f.name();
  r.domain = f.domain();
  r.codomain = f.codomain();

  for (const FdAlgebra* alg : {&f.domain(), &f.codomain()}) {
    const std::string side = alg == &f.domain() ? "domain" : "codomain";
    if (alg->is_C_plus_C())
      r.warnings.push_back(side + " " + alg->name() + " is C+C: the order-theoretic correspondence does not determine orientation there");
    if (alg->has_I2_summand())
      r.warnings.push_back(side + " " + alg->name() + " has a type I2 summand: the bare order-isomorphism statements need it excluded");
  }

  const JordanStarResult js = check_jordan_star(f, tol);
  r.jordan = js.jordan;
  r.star = js.star;
  r.is_jordan = js.jordan.passed;
  r.is_star = js.star.passed;
  r.is_unital = f.is_unital(tol);
  if (!r.is_unital) r.warnings.push_back("map is not unital");
  if (!r.is_jordan || !r.is_star) {
    r.warnings.push_back("not a Jordan *-map: remaining checks skipped");
    return r;
  }

  r.commutators = check_commutator_preservation(f, o, tol);
  r.commutator_reversal = check_commutator_reversal(f, o, tol);
  r.multiplicative = check_multiplicative_sample(f, o, tol, config.seed);
  r.orientation_delta = check_orientation_delta(f, o, tol);
  r.orientation_flow = check_orientation_flow(f, o, config.time_grid, tol);
  r.classification = classify(f, o, tol, config.seed);
  r.preserves_commutators = r.commutators.passed;
  r.preserves_orientation_delta = r.orientation_delta.passed;
  r.preserves_orientation_flow = r.orientation_flow.passed;

  const ContextPoset frag = fragment ? *fragment
                                     : poset_fragment({random_maximal_context(f.domain(), config.seed)},
                                                      config);
  r.fragment_size = frag.size();

  const HermitianBasis basis(f.domain());
  r.context_diagram.ran = true;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    CheckResult c = check_context_diagram(f, frag, basis[a], config.time_grid, o, tol);
    if (!c.passed && r.context_diagram.passed) {
      r.context_diagram.witness = c.witness;
      r.context_diagram.witness.a = a;
    }
    r.context_diagram.passed = r.context_diagram.passed && c.passed;
    r.context_diagram.residual += c.residual;
  }
  r.context_diagram_ok = r.context_diagram.passed;

  const bool bijective = r.classification.invertible;
  if (bijective) {
    r.presheaf_diagram = check_presheaf_diagram(f, frag, config.time_grid, o, config);
    r.presheaf_diagram_ok = r.presheaf_diagram.passed;
  } else {
    r.warnings.push_back("map is not bijective: presheaf diagram skipped, isomorphism equivalences not asserted");
  }

  const bool pc = r.preserves_commutators;
  auto expect = [&](bool verdict, const std::string& what) {
    if (verdict != pc)
      r.failures.push_back(what + " disagrees with commutator preservation");
  };
  expect(r.preserves_orientation_delta, "derivation orientation check");
  expect(r.preserves_orientation_flow, "flow orientation check");
  expect(r.multiplicative.passed, "multiplicativity sample");
  if (bijective) {
    expect(r.classification.classification == Classification::vn_isomorphism, "classification");
    expect(r.context_diagram_ok, "context diagram");
    expect(r.presheaf_diagram_ok, "presheaf diagram");
    if (r.classification.classification == Classification::anti_isomorphism &&
        !r.commutator_reversal.passed)
      r.failures.push_back("anti-isomorphism does not reverse commutators");
  }
  return r;
}

OrientedMapReport theorem_suite(const JordanMap& f, const SessionConfig& config) {
  return theorem_suite(f, native_orientations(f), config);
}

}  // namespace vna
