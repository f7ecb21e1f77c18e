#include "vna/json_io.hpp"

#include <fstream>
#include <sstream>

#include "vna/error.hpp"
#include "vna/spectral.hpp"

namespace vna {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw parse_error(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::size_t index_from(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> indices_from(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of indices");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(index_from(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

Complex entry_from(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(where, "expected [re, im]");
}

Element element_at(const Json& j, const FdAlgebra& m, const std::string& where) {
  const Json& blocks = field(j, "blocks", where);
  if (!blocks.is_array() || blocks.size() != m.num_blocks())
    fail(where + ".blocks", "expected " + std::to_string(m.num_blocks()) + " blocks");
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < m.num_blocks(); ++b) {
    const int n = m.block_dim(b);
    const std::string wb = where + ".blocks[" + std::to_string(b) + "]";
    const Json& rows = blocks[b];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
      fail(wb, "expected " + std::to_string(n) + " rows");
    Matrix mat(n, n);
    for (int r = 0; r < n; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      const std::string wr = wb + "[" + std::to_string(r) + "]";
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
        fail(wr, "expected " + std::to_string(n) + " entries");
      for (int c = 0; c < n; ++c)
        mat(r, c) = entry_from(row[static_cast<std::size_t>(c)], wr + "[" + std::to_string(c) + "]");
    }
    out.push_back(std::move(mat));
  }
  return {m, std::move(out)};
}

CentralProjection mask_at(const Json& j, const FdAlgebra& m, const std::string& where) {
  if (j.is_number_integer()) {
    const long long bits = j.get<long long>();
    if (bits < 0 || (m.num_blocks() < 63 && bits >= (1LL << m.num_blocks())))
      fail(where, "bitmask out of range for " + std::to_string(m.num_blocks()) + " blocks");
    return CentralProjection::from_bits(m, static_cast<unsigned long>(bits));
  }
  if (!j.is_array() || j.size() != m.num_blocks())
    fail(where, "expected one 0/1 entry per block or an integer bitmask");
  std::vector<bool> mask;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Json& e = j[k];
    if (e.is_boolean())
      mask.push_back(e.get<bool>());
    else if (e.is_number_integer() && (e.get<int>() == 0 || e.get<int>() == 1))
      mask.push_back(e.get<int>() == 1);
    else
      fail(where + "[" + std::to_string(k) + "]", "expected 0 or 1");
  }
  return {m, std::move(mask)};
}

Context context_at(const Json& j, const FdAlgebra& m, double tol, const std::string& where) {
  if (!j.is_object()) fail(where, "expected a context object");
  std::vector<Element> items;
  const bool atoms = j.contains("atoms");
  const Json& list = atoms ? j["atoms"] : field(j, "generators", where);
  const std::string wl = where + (atoms ? ".atoms" : ".generators");
  if (!list.is_array()) fail(wl, "expected an array of elements");
  for (std::size_t k = 0; k < list.size(); ++k)
    items.push_back(element_at(list[k], m, wl + "[" + std::to_string(k) + "]"));
  if (atoms) return Context(m, std::move(items), tol);
  return context_from_commuting(m, items, tol);
}

JordanMap map_at(const Json& j, const FdAlgebra& dom, const FdAlgebra& cod, double tol,
                 const std::string& where) {
  const Json& kind_j = field(j, "kind", where);
  if (!kind_j.is_string()) fail(where + ".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  const bool same = dom == cod;
  auto need_same = [&] {
    if (!same) fail(where, "map kind \"" + kind + "\" needs codomain equal to the domain");
  };
  if (kind == "identity") {
    need_same();
    return JordanMap::identity(dom);
  }
  if (kind == "ad_u") {
    need_same();
    const Element u = element_at(field(j, "u", where), dom, where + ".u");
    if (!is_unitary(u, std::sqrt(tol))) throw domain_error(where + ".u is not unitary");
    return JordanMap::adjoint_action(u);
  }
  if (kind == "transpose") {
    need_same();
    return JordanMap::transpose(dom, indices_from(field(j, "blocks", where), where + ".blocks"));
  }
  if (kind == "permute_blocks") {
    need_same();
    return JordanMap::permute_blocks(dom, indices_from(field(j, "perm", where), where + ".perm"));
  }
  if (kind == "matrix") {
    const Json& list = field(j, "basis_images", where);
    if (!list.is_array()) fail(where + ".basis_images", "expected an array of elements");
    std::vector<Element> images;
    for (std::size_t k = 0; k < list.size(); ++k)
      images.push_back(element_at(list[k], cod, where + ".basis_images[" + std::to_string(k) + "]"));
    try {
      return JordanMap(dom, cod, std::move(images), "matrix");
    } catch (const Error& e) {
      fail(where + ".basis_images", e.what());
    }
  }
  if (kind == "compose") {
    need_same();
    const Json& list = field(j, "of", where);
    if (!list.is_array() || list.empty()) fail(where + ".of", "expected a nonempty array of maps");
    JordanMap out = map_at(list.back(), dom, dom, tol, where + ".of[" + std::to_string(list.size() - 1) + "]");
    for (std::size_t k = list.size() - 1; k-- > 0;)
      out = compose(map_at(list[k], dom, dom, tol, where + ".of[" + std::to_string(k) + "]"), out);
    return out;
  }
  fail(where + ".kind", "unknown map kind \"" + kind + "\"");
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

FdAlgebra algebra_from_json(const Json& j) {
  const Json& blocks = field(j, "blocks", "algebra");
  if (!blocks.is_array() || blocks.empty()) fail("algebra.blocks", "expected a nonempty array");
  std::vector<int> dims;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Json& d = blocks[k];
    if (!d.is_number_integer() || d.get<int>() < 1)
      fail("algebra.blocks[" + std::to_string(k) + "]", "expected a positive integer");
    dims.push_back(d.get<int>());
  }
  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) fail("algebra.label", "expected a string");
    label = j["label"].get<std::string>();
  }
  return FdAlgebra(std::move(dims), std::move(label));
}

Json algebra_to_json(const FdAlgebra& m) {
  return Json{{"blocks", m.block_dims()}, {"label", m.name()}};
}

CentralProjection orientation_from_json(const Json& j, const FdAlgebra& m) {
  if (!j.is_object() || !j.contains("orientation")) return CentralProjection::unit(m);
  return mask_at(j["orientation"], m, "algebra.orientation");
}

Element element_from_json(const Json& j, const FdAlgebra& m) { return element_at(j, m, "element"); }

Json element_to_json(const Element& a) {
  Json blocks = Json::array();
  for (const auto& b : a.blocks()) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < b.cols(); ++c) row.push_back(complex_to_json(b(r, c)));
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return Json{{"blocks", std::move(blocks)}};
}

CentralProjection mask_from_json(const Json& j, const FdAlgebra& m) { return mask_at(j, m, "mask"); }

Json mask_to_json(const CentralProjection& c) {
  Json out = Json::array();
  for (bool b : c.mask()) out.push_back(b ? 1 : 0);
  return out;
}

Context context_from_json(const Json& j, const FdAlgebra& m, double tol) {
  return context_at(j, m, tol, "context");
}

Json context_to_json(const Context& v) {
  Json atoms = Json::array();
  for (const auto& p : v.atoms()) atoms.push_back(element_to_json(p));
  return Json{{"algebra", algebra_to_json(v.algebra())}, {"atoms", std::move(atoms)}};
}

std::vector<Context> seeds_from_json(const Json& j, const FdAlgebra& m, double tol) {
  const bool wrapped = j.is_object();
  const Json& list = wrapped ? field(j, "seeds", "seeds file") : j;
  if (!list.is_array()) fail("seeds", "expected an array of contexts");
  std::vector<Context> out;
  for (std::size_t k = 0; k < list.size(); ++k)
    out.push_back(context_at(list[k], m, tol, "seeds[" + std::to_string(k) + "]"));
  return out;
}

ParsedMap map_from_json(const Json& j, const FdAlgebra& domain, double tol) {
  FdAlgebra cod = domain;
  CentralProjection orientation = CentralProjection::unit(domain);
  if (j.is_object() && j.contains("codomain")) {
    cod = algebra_from_json(j["codomain"]);
    orientation = orientation_from_json(j["codomain"], cod);
  }
  return {map_at(j, domain, cod, tol, "map"), orientation};
}

Json config_to_json(const SessionConfig& c) {
  return Json{{"tolerance", c.tolerance}, {"times", c.time_grid}, {"atom_cap", c.atom_cap},
              {"node_cap", c.node_cap},   {"seed", c.seed}};
}

Json poset_to_json(const ContextPoset& p, bool with_atoms) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    Json n{{"id", i}, {"ranks", p.node(i).ranks()}};
    if (with_atoms) n["atoms"] = context_to_json(p.node(i))["atoms"];
    nodes.push_back(std::move(n));
  }
  Json order = Json::array();
  for (const auto& [i, j] : p.order_pairs()) order.push_back({i, j});
  return Json{{"nodes", std::move(nodes)}, {"order", std::move(order)}};
}

Json presheaf_to_json(const PresheafFragment& p, bool with_atoms) {
  Json out = poset_to_json(p.base(), with_atoms);
  for (std::size_t i = 0; i < p.size(); ++i) {
    Json chars = Json::array();
    for (std::size_t c = 0; c < p.num_characters(i); ++c) chars.push_back(c);
    out["nodes"][i]["characters"] = std::move(chars);
  }
  Json tables = Json::array();
  for (const auto& [i, j] : p.base().order_pairs())
    tables.push_back(Json{{"lower", i}, {"upper", j}, {"table", p.restriction(i, j)}});
  out["restrictions"] = std::move(tables);
  out["spectral"] = p.is_spectral();
  return out;
}

Json morphism_to_json(const PresheafMorphism& m) {
  return Json{{"source_size", m.source->size()},
              {"target_size", m.target->size()},
              {"base_map", m.base_map.image},
              {"components", m.components},
              {"natural", m.is_natural()},
              {"isomorphism", is_isomorphism(m)}};
}

Json check_to_json(const CheckResult& r) {
  return Json{{"ran", r.ran},
              {"passed", r.passed},
              {"residual", r.residual},
              {"witness", Json{{"a", r.witness.a}, {"b", r.witness.b}, {"t", r.witness.t}}}};
}

Json classify_to_json(const ClassifyResult& r) {
  Json out{{"classification", to_string(r.classification)},
           {"invertible", r.invertible},
           {"corner_multiplicative", r.multiplicative},
           {"corner_anti_multiplicative", r.anti_multiplicative}};
  out["splitting_c"] = r.splitting_c ? mask_to_json(*r.splitting_c) : Json(nullptr);
  return out;
}

Json report_to_json(const OrientedMapReport& r) {
  Json out{{"map", r.map_name},
           {"domain", algebra_to_json(r.domain)},
           {"codomain", algebra_to_json(r.codomain)},
           {"verdicts",
            {{"is_jordan", r.is_jordan},
             {"is_star", r.is_star},
             {"is_unital", r.is_unital},
             {"preserves_commutators", r.preserves_commutators},
             {"preserves_orientation_delta", r.preserves_orientation_delta},
             {"preserves_orientation_flow", r.preserves_orientation_flow},
             {"context_diagram_ok", r.context_diagram_ok},
             {"presheaf_diagram_ok", r.presheaf_diagram_ok}}},
           {"fragment_size", r.fragment_size},
           {"warnings", r.warnings},
           {"failures", r.failures},
           {"implementation_ok", r.implementation_ok()}};
  out.update(classify_to_json(r.classification));
  out["checks"] = Json{{"jordan", check_to_json(r.jordan)},
                       {"star", check_to_json(r.star)},
                       {"commutators", check_to_json(r.commutators)},
                       {"commutator_reversal", check_to_json(r.commutator_reversal)},
                       {"multiplicative_sample", check_to_json(r.multiplicative)},
                       {"orientation_delta", check_to_json(r.orientation_delta)},
                       {"orientation_flow", check_to_json(r.orientation_flow)},
                       {"context_diagram", check_to_json(r.context_diagram)},
                       {"presheaf_diagram", check_to_json(r.presheaf_diagram)}};
  return out;
}

}  // namespace vna
