#include "vna/contexts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "vna/error.hpp"
#include "vna/spectral.hpp"

namespace vna {

namespace {

int rank_of(const Element& p) { return static_cast<int>(std::lround(p.trace().real())); }

double overlap(const Element& p, const Element& q) { return trace_pairing(p, q).real(); }

// q ≤ p for projections: tr(q) − tr(pq) = ‖(1−p)q‖².
bool below(const Element& q, const Element& p, double tol) {
  return q.trace().real() - overlap(p, q) <= tol;
}

}  // namespace

Context make_trusted_context(FdAlgebra algebra, std::vector<Element> atoms) {
  return Context(Context::Trusted{}, std::move(algebra), std::move(atoms));
}

Context::Context(Trusted, FdAlgebra algebra, std::vector<Element> atoms)
    : algebra_(std::move(algebra)), atoms_(std::move(atoms)) {
  for (const auto& p : atoms_) ranks_.push_back(rank_of(p));
}

Context::Context(FdAlgebra algebra, std::vector<Element> atoms, double tol)
    : Context(Trusted{}, std::move(algebra), std::move(atoms)) {
  if (atoms_.empty()) throw domain_error("context needs at least one atom");
  Element sum = Element::zero(algebra_);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Element& p = atoms_[i];
    if (!(p.algebra() == algebra_)) throw structural_error("context atom from a foreign algebra");
    if (!is_projection(p, tol))
      throw domain_error("context atom " + std::to_string(i) + " is not a projection");
    if (ranks_[i] < 1) throw domain_error("context atom " + std::to_string(i) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (multiply(p, atoms_[j]).norm() > tol)
        throw domain_error("context atoms " + std::to_string(j) + " and " + std::to_string(i) +
                           " are not orthogonal");
    sum += p;
  }
  if (!close(sum, Element::identity(algebra_), tol))
    throw domain_error("context atoms do not sum to the identity");
}

Context Context::trivial(const FdAlgebra& algebra) {
  return make_trusted_context(algebra, {Element::identity(algebra)});
}

Element Context::combine(const std::vector<Complex>& coeffs) const {
  if (coeffs.size() != atoms_.size()) throw structural_error("combine: one coefficient per atom");
  Element out = Element::zero(algebra_);
  for (std::size_t i = 0; i < atoms_.size(); ++i) out += coeffs[i] * atoms_[i];
  return out;
}

bool same_context(const Context& a, const Context& b, double tol) {
  if (!(a.algebra() == b.algebra()) || a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& p : a.atoms()) {
    std::size_t best = b.size();
    double best_d = INFINITY;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = distance(p, b.atom(j));
      if (d < best_d) best_d = d, best = j;
    }
    if (best == b.size() || !close(p, b.atom(best), tol)) return false;
    used[best] = 1;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Element> spectral_projections(const Element& g, double tol, double cluster) {
  const HermitianEigensystem eig = hermitian_eig(g, tol);
  struct Entry {
    double value;
    std::size_t block;
    Eigen::Index column;
  };
  std::vector<Entry> entries;
  for (std::size_t j = 0; j < eig.blocks.size(); ++j)
    for (Eigen::Index c = 0; c < eig.blocks[j].values.size(); ++c)
      entries.push_back({eig.blocks[j].values(c), j, c});
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.value < y.value; });

  std::vector<Element> out;
  for (std::size_t start = 0; start < entries.size();) {
    std::size_t end = start + 1;
    while (end < entries.size() && entries[end].value - entries[end - 1].value <= cluster) ++end;
    Element p = Element::zero(g.algebra());
    std::vector<Matrix> blocks = p.blocks();
    for (std::size_t k = start; k < end; ++k) {
      const auto& v = eig.blocks[entries[k].block].vectors.col(entries[k].column);
      blocks[entries[k].block] += v * v.adjoint();
    }
    out.emplace_back(g.algebra(), std::move(blocks));
    start = end;
  }
  return out;
}

}  // namespace

Context context_from_commuting(const FdAlgebra& algebra, const std::vector<Element>& generators,
                               double tol, double cluster) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!(generators[i].algebra() == algebra))
      throw structural_error("generator " + std::to_string(i) + " is from a foreign algebra");
    if (!generators[i].is_hermitian(tol))
      throw domain_error("generator " + std::to_string(i) + " is not Hermitian");
    for (std::size_t j = 0; j < i; ++j) {
      const double c = commutator(generators[j], generators[i]).norm();
      const double scale =
          std::max(1.0, generators[i].norm() * generators[j].norm());
      if (c > tol * scale) {
        std::ostringstream os;
        os << "generators " << j << " and " << i << " do not commute: ‖[g" << j << ",g" << i
           << "]‖ = " << c;
        throw domain_error(os.str());
      }
    }
  }

  std::vector<Element> atoms{Element::identity(algebra)};
  for (const auto& g : generators) {
    const std::vector<Element> spectral = spectral_projections(g, tol, cluster);
    std::vector<Element> refined;
    for (const auto& p : atoms) {
      for (const auto& q : spectral) {
        Element pq = multiply(p, q);
        if (pq.trace().real() < 0.5) continue;
        refined.push_back(hermitian_part(pq));
      }
    }
    atoms = std::move(refined);
  }
  return Context(algebra, std::move(atoms), tol);
}

bool leq(const Context& lower, const Context& upper, double tol) {
  if (!(lower.algebra() == upper.algebra()))
    throw structural_error("leq: contexts of different algebras");
  if (lower.size() > upper.size()) return false;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const Element& p = lower.atom(i);
    int covered = 0;
    for (std::size_t j = 0; j < upper.size(); ++j)
      if (below(upper.atom(j), p, tol)) covered += upper.ranks()[j];
    // The q ≤ p are orthogonal, so their sum is p iff their ranks add up.
    if (covered != lower.ranks()[i]) return false;
  }
  return true;
}

Context meet(const Context& a, const Context& b, double tol) {
  if (!(a.algebra() == b.algebra())) throw structural_error("meet: contexts of different algebras");
  // Atoms of a ∩ b are the connected components of the graph joining p ∈ a
  // and q ∈ b whenever pq ≠ 0; each component sums to the same projection on
  // both sides.
  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::size_t> parent(na + nb);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      if (overlap(a.atom(i), b.atom(j)) > tol) parent[find(i)] = find(na + j);

  std::vector<std::size_t> roots;
  std::vector<Element> from_a, from_b;
  auto slot = [&](std::size_t root) {
    auto it = std::find(roots.begin(), roots.end(), root);
    if (it != roots.end()) return static_cast<std::size_t>(it - roots.begin());
    roots.push_back(root);
    from_a.push_back(Element::zero(a.algebra()));
    from_b.push_back(Element::zero(a.algebra()));
    return roots.size() - 1;
  };
  for (std::size_t i = 0; i < na; ++i) from_a[slot(find(i))] += a.atom(i);
  for (std::size_t j = 0; j < nb; ++j) from_b[slot(find(na + j))] += b.atom(j);
  for (std::size_t k = 0; k < roots.size(); ++k)
    if (!close(from_a[k], from_b[k], std::sqrt(tol)))
      throw numeric_error("meet: component sums disagree between the two contexts");
  return make_trusted_context(a.algebra(), std::move(from_a));
}

std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return {{}};
  std::vector<std::size_t> a(n, 0), m(n, 0);  // m[i] = max(a[0..i])
  while (true) {
    out.push_back(a);
    // Increment the rightmost position that can grow.
    std::size_t i = n - 1;
    while (i > 0 && a[i] == m[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    m[i] = std::max(m[i - 1], a[i]);
    for (std::size_t k = i + 1; k < n; ++k) {
      a[k] = 0;
      m[k] = m[i];
    }
  }
  return out;
}

std::vector<Context> down_closure(const Context& v, std::size_t atom_cap) {
  if (v.size() > atom_cap)
    throw resource_error("down_closure: context has " + std::to_string(v.size()) +
                         " atoms, cap is " + std::to_string(atom_cap));
  std::vector<Context> out;
  for (const auto& labels : set_partitions(v.size())) {
    const std::size_t blocks = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<Element> atoms(blocks, Element::zero(v.algebra()));
    for (std::size_t i = 0; i < labels.size(); ++i) atoms[labels[i]] += v.atom(i);
    out.push_back(make_trusted_context(v.algebra(), std::move(atoms)));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Fixed generic Hermitian weight; tr(pW) per atom is a cheap, basis-independent
// prefilter for context equality.
Element signature_weight(const FdAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < algebra.num_blocks(); ++j) {
    const int n = algebra.block_dim(j);
    Matrix w(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const double x = std::sin(1.0 + 7.0 * r + 3.0 * c + 11.0 * j) +
                         std::sin(1.0 + 7.0 * c + 3.0 * r + 11.0 * j);
        const double y = std::cos(2.0 + 5.0 * r + 13.0 * c + 17.0 * j) -
                         std::cos(2.0 + 5.0 * c + 13.0 * r + 17.0 * j);
        w(r, c) = Complex(x, y);
      }
    blocks.push_back(std::move(w));
  }
  return {algebra, std::move(blocks)};
}

std::vector<double> signature(const Context& v, const Element& w) {
  std::vector<double> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s.push_back(v.ranks()[i] * 1e3 + trace_pairing(v.atom(i), w).real());
  std::sort(s.begin(), s.end());
  return s;
}

bool signatures_match(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-6 * std::max(1.0, std::abs(a[i]))) return false;
  return true;
}

}  // namespace

ContextPoset ContextPoset::from_nodes(const std::vector<Context>& nodes, double tol,
                                      std::size_t node_cap) {
  ContextPoset out;
  out.tol_ = tol;
  if (nodes.empty()) return out;
  const Element w = signature_weight(nodes.front().algebra());
  for (const auto& v : nodes) {
    if (!(v.algebra() == nodes.front().algebra()))
      throw structural_error("poset nodes from different algebras");
    std::vector<double> sig = signature(v, w);
    bool dup = false;
    for (std::size_t k = 0; k < out.nodes_.size() && !dup; ++k)
      dup = signatures_match(sig, out.signatures_[k]) && same_context(v, out.nodes_[k], tol);
    if (dup) continue;
    if (out.nodes_.size() == node_cap)
      throw resource_error("context poset exceeds the node cap of " + std::to_string(node_cap));
    out.nodes_.push_back(v);
    out.signatures_.push_back(std::move(sig));
  }
  const std::size_t n = out.nodes_.size();
  out.order_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.order_[i * n + j] = (i == j) || vna::leq(out.nodes_[i], out.nodes_[j], tol);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> ContextPoset::order_pairs(bool strict) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (leq(i, j) && !(strict && i == j)) out.emplace_back(i, j);
  return out;
}

std::optional<std::size_t> ContextPoset::find(const Context& v) const {
  if (nodes_.empty() || !(v.algebra() == nodes_.front().algebra())) return std::nullopt;
  const std::vector<double> sig = signature(v, signature_weight(v.algebra()));
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    if (signatures_match(sig, signatures_[k]) && same_context(v, nodes_[k], tol_)) return k;
  return std::nullopt;
}

ContextPoset poset_fragment(const std::vector<Context>& seeds, const SessionConfig& config) {
  if (seeds.empty()) return {};
  std::vector<Context> all;
  for (const auto& s : seeds) {
    if (!(s.algebra() == seeds.front().algebra()))
      throw structural_error("poset_fragment: seeds from different algebras");
    for (auto& v : down_closure(s, config.atom_cap)) all.push_back(std::move(v));
  }
  return ContextPoset::from_nodes(all, config.tolerance, config.node_cap);
}

// ---------------------------------------------------------------------------

Complex GelfandSpectrum::evaluate_unchecked(std::size_t character, const Element& a) const {
  const Element& p = context_.atom(character);
  return trace_pairing(p, a) / static_cast<double>(context_.ranks()[character]);
}

std::vector<Complex> GelfandSpectrum::evaluate_all(const Element& a) const {
  std::vector<Complex> values;
  for (std::size_t k = 0; k < size(); ++k) values.push_back(evaluate_unchecked(k, a));
  if (!close(a, context_.combine(values), tol_))
    throw domain_error("element is not in the context");
  return values;
}

Complex GelfandSpectrum::evaluate(std::size_t character, const Element& a) const {
  if (character >= size()) throw domain_error("no such character");
  return evaluate_all(a)[character];
}

GelfandSpectrum gelfand_spectrum(const Context& v, double tol) { return GelfandSpectrum(v, tol); }

std::vector<std::size_t> restriction(const Context& lower, const Context& upper, double tol) {
  if (!(lower.algebra() == upper.algebra()))
    throw structural_error("restriction: contexts of different algebras");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    std::size_t target = lower.size();
    for (std::size_t k = 0; k < lower.size() && target == lower.size(); ++k)
      if (below(upper.atom(i), lower.atom(k), tol)) target = k;
    if (target == lower.size())
      throw domain_error("restriction: contexts are not comparable (atom " + std::to_string(i) +
                         " lies under no atom of the smaller context)");
    out.push_back(target);
  }
  return out;
}

Context conjugate_context(const Context& v, const Element& u, double tol) {
  if (!(u.algebra() == v.algebra())) throw structural_error("conjugate_context: foreign unitary");
  if (!is_unitary(u, tol)) throw domain_error("conjugate_context: u is not unitary");
  const Element u_star = adjoint(u);
  std::vector<Element> atoms;
  for (const auto& p : v.atoms()) atoms.push_back(hermitian_part(multiply(multiply(u, p), u_star)));
  return make_trusted_context(v.algebra(), std::move(atoms));
}

// ---------------------------------------------------------------------------

OrderMap identity_order_map(std::size_t n) {
  OrderMap m;
  m.image.resize(n);
  std::iota(m.image.begin(), m.image.end(), 0);
  return m;
}

OrderMap compose(const OrderMap& g, const OrderMap& f) {
  OrderMap out;
  for (std::size_t i : f.image) out.image.push_back(g(i));
  return out;
}

bool is_order_preserving(const OrderMap& map, const ContextPoset& domain,
                         const ContextPoset& codomain) {
  if (map.size() != domain.size()) return false;
  for (std::size_t x : map.image)
    if (x >= codomain.size()) return false;
  for (const auto& [i, j] : domain.order_pairs(true))
    if (!codomain.leq(map(i), map(j))) return false;
  return true;
}

bool is_order_isomorphism(const OrderMap& map, const ContextPoset& domain,
                          const ContextPoset& codomain) {
  if (map.size() != domain.size() || domain.size() != codomain.size()) return false;
  std::vector<char> hit(codomain.size(), 0);
  for (std::size_t x : map.image) {
    if (x >= codomain.size() || hit[x]) return false;
    hit[x] = 1;
  }
  for (std::size_t i = 0; i < domain.size(); ++i)
    for (std::size_t j = 0; j < domain.size(); ++j)
      if (domain.leq(i, j) != codomain.leq(map(i), map(j))) return false;
  return true;
}

Context image_context(const JordanMap& f, const Context& v, double tol) {
  if (!(f.domain() == v.algebra())) throw structural_error("image_context: foreign context");
  std::vector<Element> atoms;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Element q = f(v.atom(i));
    if (!is_projection(q, tol))
      throw domain_error("map " + f.name() + " sends atom " + std::to_string(i) +
                         " to a non-projection");
    if (q.trace().real() < 0.5) continue;
    atoms.push_back(hermitian_part(q));
  }
  return Context(f.codomain(), std::move(atoms), tol);
}

OrderMap locate_images(const std::vector<Context>& images, const ContextPoset& target) {
  OrderMap out;
  std::vector<std::size_t> escaping;
  for (std::size_t i = 0; i < images.size(); ++i) {
    auto k = target.find(images[i]);
    if (!k) escaping.push_back(i);
    out.image.push_back(k.value_or(target.size()));
  }
  if (!escaping.empty()) {
    std::ostringstream os;
    os << "image escapes the target fragment at nodes";
    for (std::size_t i : escaping) os << ' ' << i;
    throw domain_error(os.str());
  }
  return out;
}

OrderMap induced_order_map(const JordanMap& f, const ContextPoset& p, const ContextPoset& target) {
  std::vector<Context> images;
  for (const auto& v : p.nodes()) images.push_back(image_context(f, v, p.tolerance()));
  return locate_images(images, target);
}

InducedOrderMap induced_order_map(const JordanMap& f, const ContextPoset& p) {
  std::vector<Context> images;
  for (const auto& v : p.nodes()) images.push_back(image_context(f, v, p.tolerance()));
  ContextPoset image = ContextPoset::from_nodes(images, p.tolerance(), std::max<std::size_t>(images.size(), 1));
  OrderMap map = locate_images(images, image);
  return {std::move(image), std::move(map)};
}

}  // namespace vna
