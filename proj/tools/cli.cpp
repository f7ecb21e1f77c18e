#include "vna/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "vna/derivations.hpp"
#include "vna/error.hpp"
#include "vna/json_io.hpp"
#include "vna/morphisms.hpp"
#include "vna/presheaf.hpp"
#include "vna/spectral.hpp"

namespace vna {

namespace {

struct Common {
  double tolerance = 1e-9;
  std::vector<double> times;
  std::size_t atom_cap = 8;
  std::size_t node_cap = 500;
  std::uint64_t seed = 20141119;
  std::string json_out;
  bool quiet = false;

  SessionConfig config() const {
    SessionConfig c;
    c.tolerance = tolerance;
    if (!times.empty()) c.time_grid = times;
    c.atom_cap = atom_cap;
    c.node_cap = node_cap;
    c.seed = seed;
    c.validate();
    return c;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--tolerance", c.tolerance, "Numerical tolerance")->capture_default_str();
  cmd->add_option("--times", c.times, "Time grid, comma separated")->delimiter(',');
  cmd->add_option("--atom-cap", c.atom_cap, "Largest atom count for down-closures")->capture_default_str();
  cmd->add_option("--node-cap", c.node_cap, "Largest fragment size")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for all random sampling")->capture_default_str();
  cmd->add_option("--json-out", c.json_out, "Write the JSON report here instead of stdout");
  cmd->add_flag("--quiet", c.quiet, "Suppress the summary");
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse:
    case ErrorKind::structural: return 2;
    case ErrorKind::domain:
    case ErrorKind::numeric: return 3;
    case ErrorKind::resource: return 4;
  }
  return 3;
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return "parse error";
    case ErrorKind::structural: return "structural error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::numeric: return "numeric error";
    case ErrorKind::resource: return "resource error";
  }
  return "error";
}

// JSON goes to --json-out when given (summary to `out`), else to `out` with
// the summary on `err`.
void emit(const Common& c, Json report, const std::string& summary, std::ostream& out,
          std::ostream& err) {
  report["config"] = config_to_json(c.config());
  if (!c.json_out.empty()) {
    std::ofstream f(c.json_out);
    if (!f) throw parse_error(c.json_out + ": cannot write");
    f << report.dump(2) << '\n';
    if (!c.quiet) out << summary;
  } else {
    out << report.dump(2) << '\n';
    if (!c.quiet) err << summary;
  }
}

struct Loaded {
  FdAlgebra algebra;
  CentralProjection orientation;
};

Loaded load_algebra(const std::string& path) {
  const Json j = load_json_file(path);
  FdAlgebra m = algebra_from_json(j);
  CentralProjection o = orientation_from_json(j, m);
  return {m, o};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_verify(const Common& c, const std::string& algebra_file, const std::string& map_file,
               const std::string& seeds_file, std::ostream& out, std::ostream& err) {
  const SessionConfig cfg = c.config();
  const Loaded m = load_algebra(algebra_file);
  const ParsedMap pm = map_from_json(load_json_file(map_file), m.algebra, cfg.tolerance);
  const Orientations o{DynamicalCorrespondence(m.orientation),
                       DynamicalCorrespondence(pm.codomain_orientation)};
  std::optional<ContextPoset> fragment;
  if (!seeds_file.empty())
    fragment = poset_fragment(seeds_from_json(load_json_file(seeds_file), m.algebra, cfg.tolerance), cfg);
  const OrientedMapReport r = theorem_suite(pm.map, o, cfg, fragment);

  std::ostringstream s;
  s << "map " << r.map_name << ": " << r.domain.name() << " -> " << r.codomain.name() << '\n'
    << "  jordan " << yes_no(r.is_jordan) << ", star " << yes_no(r.is_star) << '\n'
    << "  classification " << to_string(r.classification.classification) << '\n'
    << "  commutators " << yes_no(r.preserves_commutators) << ", orientation (derivation) "
    << yes_no(r.preserves_orientation_delta) << ", orientation (flow) "
    << yes_no(r.preserves_orientation_flow) << '\n'
    << "  context diagram " << yes_no(r.context_diagram_ok) << ", presheaf diagram "
    << yes_no(r.presheaf_diagram_ok) << " (fragment of " << r.fragment_size << " nodes)\n";
  for (const auto& w : r.warnings) s << "  warning: " << w << '\n';
  for (const auto& f : r.failures) s << "  FAILURE: " << f << '\n';
  emit(c, report_to_json(r), s.str(), out, err);
  return r.implementation_ok() ? 0 : 1;
}

int cmd_classify(const Common& c, const std::string& algebra_file, const std::string& map_file,
                 std::ostream& out, std::ostream& err) {
  const SessionConfig cfg = c.config();
  const Loaded m = load_algebra(algebra_file);
  const ParsedMap pm = map_from_json(load_json_file(map_file), m.algebra, cfg.tolerance);
  const Orientations o{DynamicalCorrespondence(m.orientation),
                       DynamicalCorrespondence(pm.codomain_orientation)};
  const JordanStarResult js = check_jordan_star(pm.map, cfg.tolerance);
  const ClassifyResult r = classify(pm.map, o, cfg.tolerance, cfg.seed);
  Json j = classify_to_json(r);
  j["map"] = pm.map.name();
  j["domain"] = algebra_to_json(pm.map.domain());
  j["codomain"] = algebra_to_json(pm.map.codomain());
  j["checks"] = Json{{"jordan", check_to_json(js.jordan)}, {"star", check_to_json(js.star)}};
  std::ostringstream s;
  s << "map " << pm.map.name() << ": " << to_string(r.classification);
  if (r.splitting_c) {
    s << ", c = (";
    for (std::size_t k = 0; k < r.splitting_c->mask().size(); ++k)
      s << (k ? "," : "") << (r.splitting_c->mask()[k] ? 1 : 0);
    s << ")";
  }
  s << '\n';
  emit(c, std::move(j), s.str(), out, err);
  return 0;
}

int cmd_presheaf(const Common& c, const std::string& algebra_file, const std::string& seeds_file,
                 const std::string& map_file, bool with_atoms, std::ostream& out,
                 std::ostream& err) {
  const SessionConfig cfg = c.config();
  const Loaded m = load_algebra(algebra_file);
  const std::vector<Context> seeds =
      seeds_from_json(load_json_file(seeds_file), m.algebra, cfg.tolerance);
  const ContextPoset p = poset_fragment(seeds, cfg);
  const FragmentPtr sigma = build_presheaf(p);
  Json j{{"algebra", algebra_to_json(m.algebra)}, {"presheaf", presheaf_to_json(*sigma, with_atoms)}};
  j["functorial"] = sigma->is_functorial();

  std::ostringstream s;
  s << "fragment of " << p.size() << " nodes, " << p.order_pairs(true).size()
    << " strict order pairs, functorial " << yes_no(sigma->is_functorial()) << '\n';

  if (!map_file.empty()) {
    const ParsedMap pm = map_from_json(load_json_file(map_file), m.algebra, cfg.tolerance);
    const JordanStarResult js = check_jordan_star(pm.map, cfg.tolerance);
    if (!js.jordan.passed || !js.star.passed)
      throw domain_error("map " + pm.map.name() + " is not a Jordan *-map");
    // Down-closure of the image so the codomain fragment is a fragment in its own right.
    std::vector<Context> images;
    for (const auto& v : p.nodes()) images.push_back(image_context(pm.map, v, cfg.tolerance));
    const ContextPoset q = poset_fragment(images, cfg);
    const FragmentPtr tau = build_presheaf(q);
    const PresheafMorphism f = induced_presheaf_morphism(pm.map, sigma, tau);
    j["codomain"] = algebra_to_json(pm.map.codomain());
    j["codomain_presheaf"] = presheaf_to_json(*tau, with_atoms);
    j["morphism"] = morphism_to_json(f);
    s << "induced morphism from a codomain fragment of " << q.size() << " nodes: natural "
      << yes_no(f.is_natural()) << ", isomorphism " << yes_no(is_isomorphism(f)) << '\n';
  }
  emit(c, std::move(j), s.str(), out, err);
  return 0;
}

CentralProjection parse_mask(const std::string& text, const FdAlgebra& m) {
  Json j;
  if (text.find(',') != std::string::npos || text.find('[') != std::string::npos) {
    std::string t = text;
    if (t.front() != '[') t = "[" + t + "]";
    try {
      j = Json::parse(t);
    } catch (const Json::parse_error&) {
      throw parse_error("--mask: expected 0/1 entries or an integer bitmask");
    }
  } else {
    try {
      std::size_t used = 0;
      j = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw parse_error("--mask: expected 0/1 entries or an integer bitmask");
    }
  }
  return mask_from_json(j, m);
}

int cmd_flow(const Common& c, const std::string& algebra_file, const std::string& generator_file,
             const std::string& mask_text, const std::string& apply_file,
             const std::string& seeds_file, std::ostream& out, std::ostream& err) {
  const SessionConfig cfg = c.config();
  const Loaded m = load_algebra(algebra_file);
  const Element a = element_from_json(load_json_file(generator_file), m.algebra);
  const CentralProjection orient = mask_text.empty() ? m.orientation : parse_mask(mask_text, m.algebra);
  const DynamicalCorrespondence dc(orient);
  const InnerFlow fl = flow(a, dc, cfg.tolerance);

  std::vector<Element> inputs;
  if (apply_file.empty()) {
    inputs = HermitianBasis(m.algebra).elements();
  } else {
    const Json j = load_json_file(apply_file);
    if (j.is_array())
      for (const auto& e : j) inputs.push_back(element_from_json(e, m.algebra));
    else
      inputs.push_back(element_from_json(j, m.algebra));
  }
  std::optional<ContextPoset> fragment;
  if (!seeds_file.empty())
    fragment = poset_fragment(seeds_from_json(load_json_file(seeds_file), m.algebra, cfg.tolerance), cfg);

  const OrderDerivation psi = dc.psi(a);
  Json orbit = Json::array();
  double worst = 0.0;
  for (double t : cfg.time_grid) {
    const Element u = fl.unitary(t);
    Json images = Json::array();
    double inverse_res = 0.0, series_res = 0.0, group_res = 0.0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const Element& b = inputs[k];
      const Element img = fl(t, b);
      images.push_back(Json{{"input", k}, {"image", element_to_json(img)}});
      inverse_res = std::max(inverse_res, relative_distance(fl(-t, img), b));
      series_res = std::max(series_res, relative_distance(psi.exponential_series(t, b, 11), img));
      for (double s : cfg.time_grid)
        group_res = std::max(group_res, relative_distance(fl(s, img), fl(s + t, b)));
    }
    const double unit_res = relative_distance(multiply(u, adjoint(u)), Element::identity(m.algebra));
    worst = std::max({worst, inverse_res, group_res, unit_res});
    Json entry{{"t", t},
               {"unitary", element_to_json(u)},
               {"images", std::move(images)},
               {"residuals",
                {{"unitarity", unit_res},
                 {"inverse", inverse_res},
                 {"group_law", group_res},
                 {"series_12_terms", series_res}}}};
    if (fragment) {
      std::vector<Context> nodes = fragment->nodes();
      for (const auto& v : fragment->nodes()) nodes.push_back(conjugate_context(v, u, cfg.tolerance));
      const ContextPoset extended = ContextPoset::from_nodes(nodes, cfg.tolerance, cfg.node_cap);
      std::vector<Context> moved(nodes.begin() + static_cast<std::ptrdiff_t>(fragment->size()), nodes.end());
      const OrderMap node_map = locate_images(moved, extended);
      bool invariant = true;
      for (std::size_t i : node_map.image) invariant = invariant && i < fragment->size();
      entry["contexts"] = Json{{"node_map", node_map.image},
                               {"extended_size", extended.size()},
                               {"fragment_invariant", invariant}};
    }
    orbit.push_back(std::move(entry));
  }

  Json j{{"algebra", algebra_to_json(m.algebra)},
         {"generator", element_to_json(a)},
         {"orientation", mask_to_json(orient)},
         {"orbit", std::move(orbit)}};
  if (fragment) j["fragment"] = poset_to_json(*fragment, false);
  std::ostringstream s;
  s << "flow of a " << m.algebra.name() << " generator over " << cfg.time_grid.size()
    << " times; worst automorphism residual " << worst << '\n';
  emit(c, std::move(j), s.str(), out, err);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orientation checks for finite-dimensional von Neumann algebras", "vna"};
  app.require_subcommand(1);
  Common c;

  std::string algebra, map, seeds, generator, mask, apply;
  bool with_atoms = true;

  auto* verify = app.add_subcommand("verify", "Run every orientation check on a map");
  verify->add_option("algebra", algebra, "Algebra JSON")->required();
  verify->add_option("map", map, "Map JSON")->required();
  verify->add_option("--seeds", seeds, "Contexts generating the fragment for the diagram checks");
  add_common(verify, c);

  auto* cls = app.add_subcommand("classify", "Splitting central projection of a map");
  cls->add_option("algebra", algebra, "Algebra JSON")->required();
  cls->add_option("map", map, "Map JSON")->required();
  add_common(cls, c);

  auto* pre = app.add_subcommand("presheaf", "Spectral presheaf over the fragment generated by seeds");
  pre->add_option("algebra", algebra, "Algebra JSON")->required();
  pre->add_option("seeds", seeds, "Seed contexts JSON")->required();
  pre->add_option("--map", map, "Also dump the morphism induced by this map");
  pre->add_flag("!--no-atoms", with_atoms, "Omit atom matrices from the dump");
  add_common(pre, c);

  auto* fl = app.add_subcommand("flow", "Inner flow of a Hermitian generator");
  fl->add_option("algebra", algebra, "Algebra JSON")->required();
  fl->add_option("generator", generator, "Generator element JSON")->required();
  fl->add_option("--mask", mask, "Orientation: 0/1 per block or an integer bitmask");
  fl->add_option("--apply", apply, "Elements to evolve (default: the Hermitian basis)");
  fl->add_option("--seeds", seeds, "Contexts whose fragment is moved by the flow");
  add_common(fl, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "vna: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*verify) return cmd_verify(c, algebra, map, seeds, out, err);
    if (*cls) return cmd_classify(c, algebra, map, out, err);
    if (*pre) return cmd_presheaf(c, algebra, seeds, map, with_atoms, out, err);
    if (*fl) return cmd_flow(c, algebra, generator, mask, apply, seeds, out, err);
  } catch (const Error& e) {
    err << "vna: " << kind_name(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    err << "vna: parse error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace vna
