#include "chainlab/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <variant>

#include "chainlab/axioms.hpp"
#include "chainlab/derived.hpp"
#include "chainlab/document.hpp"
#include "chainlab/tstruct.hpp"

namespace chainlab::cli {

using nlohmann::json;

namespace {

// Bad input that should exit with status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Result {
  int status = 0;
  std::string text;
  json data = json::object();
};

json module_json(const FgModule& m) {
  json tors = json::array();
  for (const auto& f : m.invariant_factors()) tors.push_back(f.get_str());
  return {{"text", m.to_string()}, {"free_rank", m.free_rank()}, {"torsion", tors}};
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  buf << in.rdbuf();
  return buf.str();
}

Document load(const std::string& path, const CoefficientRing& ring) {
  try {
    return parse_document(read_input(path), ring);
  } catch (const DocumentError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

const NamedComplex& pick_complex(const Document& doc, const std::string& name, std::size_t fallback = 0) {
  if (!name.empty()) {
    for (const auto& c : doc.complexes)
      if (c.name == name) return c;
    throw UsageError("no complex named '" + name + "'");
  }
  if (doc.complexes.empty()) throw UsageError("document contains no complex");
  return doc.complexes[std::min(fallback, doc.complexes.size() - 1)];
}

const NamedMap& pick_map(const Document& doc, const std::string& name, std::size_t fallback = 0) {
  if (!name.empty()) {
    for (const auto& m : doc.maps)
      if (m.name == name) return m;
    throw UsageError("no map named '" + name + "'");
  }
  if (doc.maps.empty()) throw UsageError("document contains no map");
  return doc.maps[std::min(fallback, doc.maps.size() - 1)];
}

FgModule module_arg(const CoefficientRing& ring, const std::string& text) {
  try {
    return FgModule::parse(ring, text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int lo_or0(const ChainComplex& c) { return c.is_zero() ? 0 : c.lo(); }
int hi_or0(const ChainComplex& c) { return c.is_zero() ? 0 : c.hi(); }

Result cohomology_table(const ChainComplex& c, int lo, int hi) {
  Result r;
  std::ostringstream out;
  json rows = json::array();
  for (int n = lo; n <= hi; ++n) {
    auto h = cohomology(c, n);
    out << "H^" << n << " = " << h.to_string() << '\n';
    rows.push_back({{"degree", n}, {"module", module_json(h)}});
  }
  r.text = out.str();
  r.data["cohomology"] = rows;
  return r;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Result les_result(const LongExactSequence& les) {
  Result r;
  std::ostringstream out;
  json rows = json::array();
  for (std::size_t i = 0; i < les.maps.size(); ++i) {
    out << les.labels[i] << ": " << les.maps[i].source().to_string() << " -> " << les.maps[i].target().to_string()
        << (les.exact[i] ? "" : "  NOT EXACT") << '\n';
    rows.push_back({{"label", les.labels[i]},
                    {"source", les.maps[i].source().to_string()},
                    {"target", les.maps[i].target().to_string()},
                    {"exact", static_cast<bool>(les.exact[i])}});
  }
  r.text = out.str();
  r.data = rows;
  r.status = les.all_exact() ? 0 : 1;
  return r;
}

std::string homotopy_components(const Homotopy& h, int lo, int hi) {
  std::ostringstream out;
  for (int n = lo; n <= hi; ++n) {
    auto m = h.component(n);
    if (!m.empty() && !m.is_zero()) out << "  s " << n << ' ' << m.to_string() << '\n';
  }
  return out.str();
}

std::string verdict_table(const TStructureVerdict& v) {
  std::ostringstream out;
  out << "n\tle\tge\n";
  for (const auto& [n, le] : v.in_le) out << n << '\t' << yes_no(le) << '\t' << yes_no(v.in_ge.at(n)) << '\n';
  out << "heart: " << yes_no(v.heart) << '\n';
  return out.str();
}

json verdict_json(const TStructureVerdict& v) {
  json rows = json::array();
  for (const auto& [n, le] : v.in_le) rows.push_back({{"n", n}, {"le", le}, {"ge", v.in_ge.at(n)}});
  return {{"degrees", rows}, {"heart", v.heart}};
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{
      "cohomology", "cone",     "cylinder",   "shift",    "tensor",   "quasi-iso",    "null-homotopy",
      "hom-k",      "resolve",  "derived-tensor", "tor",  "ext",      "truncate",     "t-verdict",
      "tilt-verdict", "octahedron", "verify-axioms", "generate"};
  return names;
}

const std::vector<CoverageEntry>& operation_coverage() {
  static const std::vector<CoverageEntry> table{
      {"exactla", "smith_normal_form", "cohomology"},
      {"exactla", "kernel_basis", "truncate"},
      {"exactla", "cokernel_presentation", "resolve"},
      {"exactla", "solve_linear", "null-homotopy"},
      {"exactla", "module_map_analysis", "quasi-iso"},
      {"complex", "validate", "cohomology"},
      {"complex", "cohomology", "cohomology"},
      {"complex", "shift", "shift"},
      {"complex", "biproduct", "tensor"},
      {"complex", "tensor", "tensor"},
      {"complex", "induced_map", "quasi-iso"},
      {"complex", "is_quasi_iso", "quasi-iso"},
      {"cone", "cone", "cone"},
      {"cone", "cylinder", "cylinder"},
      {"cone", "ses_compare", "truncate"},
      {"cone", "rotate", "cone"},
      {"cone", "cofiber_les", "cone"},
      {"cone", "iterated_cofiber", "cone"},
      {"homotopy", "find_null_homotopy", "null-homotopy"},
      {"homotopy", "hom_in_K", "hom-k"},
      {"homotopy", "find_homotopy_inverse", "quasi-iso"},
      {"homotopy", "certify_exact", "octahedron"},
      {"derived", "free_resolution", "resolve"},
      {"derived", "derived_tensor", "derived-tensor"},
      {"derived", "tor", "tor"},
      {"derived", "ext", "ext"},
      {"derived", "hom_derived", "hom-k"},
      {"tstruct", "truncate", "truncate"},
      {"tstruct", "truncation_triangle", "truncate"},
      {"tstruct", "standard_t_verdict", "t-verdict"},
      {"tstruct", "heart_H0", "t-verdict"},
      {"tstruct", "torsion_decompose", "tilt-verdict"},
      {"tstruct", "tilted_t_verdict", "tilt-verdict"},
      {"axioms", "random_complex", "generate"},
      {"axioms", "check_tr1", "verify-axioms"},
      {"axioms", "check_tr2", "verify-axioms"},
      {"axioms", "check_tr3", "verify-axioms"},
      {"axioms", "check_tr4", "octahedron"},
      {"axioms", "check_cohomological_functor", "verify-axioms"},
      {"cli", "parse_document", "cohomology"},
  };
  return table;
}

Outcome run_command(const std::vector<std::string>& args) {
  CLI::App app{"Exact computations with chain complexes over Z, Q and F_p", "chainlab"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  std::string ring_name;
  app.add_flag("--json", as_json, "Emit one JSON object instead of text");
  app.add_option("--ring", ring_name, "Default coefficient ring: Z, Q or F<p> (else $CHAINLAB_RING, else Z)");

  // Everything a handler needs, filled by the option parser.
  std::string file, file2, cname, cname2, mname, mname2, side = "below";
  int k = 0, n_opt = 0, lo = 0, hi = 0, length = 0;
  bool flag_a = false;
  std::uint64_t seed = 0;
  std::size_t instances = 100, max_rank = 4, torsion = 0;
  std::optional<int> n_given;
  std::string module_text;

  std::function<Result(const CoefficientRing&)> handler;
  auto sub = [&](const std::string& name, const std::string& help, std::function<Result(const CoefficientRing&)> h) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&handler, h] { handler = h; });
    return s;
  };

  auto* c_coh = sub("cohomology", "Cohomology table of a complex", [&](const CoefficientRing& ring) {
    auto doc = load(file, ring);
    const auto& c = pick_complex(doc, cname).complex;
    Result r = cohomology_table(c, lo_or0(c), hi_or0(c));
    r.data["ring"] = doc.ring.name();
    return r;
  });
  c_coh->add_option("file", file, "Document, or - for stdin")->required();
  c_coh->add_option("--complex", cname, "Complex to use (default: the first)");

  auto* c_cone = sub("cone", "Mapping cone of a chain map", [&](const CoefficientRing& ring) {
    auto doc = load(file, ring);
    const auto& m = pick_map(doc, mname);
    Cone cn = cone(m.map);
    Result r;
    std::string name = "Cone_" + m.name;
    r.text = render(cn.complex, name);
    r.data["complex"] = r.text;
    if (flag_a) {
      Result les = les_result(cofiber_les(m.map));
      r.text += "# cofiber sequence\n" + les.text;
      r.data["les"] = les.data;
      r.status = std::max(r.status, les.status);
    }
    if (length > 0) {
      json steps = json::array();
      std::ostringstream out;
      int i = 0;
      for (const auto& step : iterated_cofiber(m.map, length)) {
        out << "rotation " << i++ << ": " << to_string(step.report.verdict) << '\n';
        steps.push_back(to_string(step.report.verdict));
        if (step.report.verdict == Verdict::Refuted) r.status = 1;
      }
      r.text += out.str();
      r.data["rotations"] = steps;
    }
    return r;
  });
  c_cone->add_option("file", file)->required();
  c_cone->add_option("--map", mname, "Map to use (default: the first)");
  c_cone->add_flag("--les", flag_a, "Print the cofiber long exact sequence");
  c_cone->add_option("--rotations", length, "Check this many rotations of the cone triangle");

  auto* c_cyl = sub("cylinder", "Mapping cylinder of a chain map", [&](const CoefficientRing& ring) {
    auto doc = load(file, ring);
    const auto& m = pick_map(doc, mname);
    Cylinder cyl = cylinder(m.map);
    Result r;
    r.text = render(cyl.complex, "Cyl_" + m.name);
    bool qi = is_quasi_iso(cyl.out_y);
    r.text += "# out_Y quasi-isomorphism: " + yes_no(qi) + "\n";
    r.data["complex"] = render(cyl.complex, "Cyl_" + m.name);
    r.data["out_y_quasi_iso"] = qi;
    return r;
  });
  c_cyl->add_option("file", file)->required();
  c_cyl->add_option("--map", mname);

  auto* c_shift = sub("shift", "Shift X[k]", [&](const CoefficientRing& ring) {
    auto doc = load(file, ring);
    const auto& c = pick_complex(doc, cname);
    Result r;
    r.text = render(shift(c.complex, k), c.name);
    r.data["complex"] = r.text;
    return r;
  });
  c_shift->add_option("file", file)->required();
  c_shift->add_option("--by", k, "Shift amount")->required();
  c_shift->add_option("--complex", cname);

  auto* c_tensor = sub("tensor", "Tensor product (or direct sum with --sum) of two complexes",
                       [&](const CoefficientRing& ring) {
                         auto doc = load(file, ring);
                         const auto& a = pick_complex(doc, cname, 0);
                         const auto& b = pick_complex(doc, cname2, 1);
                         Result r;
                         if (flag_a) {
                           r.text = render(biproduct(a.complex, b.complex).sum, a.name + "_plus_" + b.name);
                         } else {
                           r.text = render(tensor(a.complex, b.complex), a.name + "_tensor_" + b.name);
                         }
                         r.data["complex"] = r.text;
                         return r;
                       });
  c_tensor->add_option("file", file)->required();
  c_tensor->add_option("--left", cname, "Left factor (default: first complex)");
  c_tensor->add_option("--right", cname2, "Right factor (default: second complex)");
  c_tensor->add_flag("--sum", flag_a, "Direct sum instead of tensor product");

  auto* c_qi = sub("quasi-iso", "Induced maps on cohomology and quasi-isomorphism test", [&](const CoefficientRing& ring) {
    auto doc = load(file, ring);
    const auto& m = pick_map(doc, mname);
    Result r;
    std::ostringstream out;
    json rows = json::array();
    for (int n = m.map.lo(); n <= m.map.hi(); ++n) {
      auto a = module_map_analysis(induced_map(m.map, n));
      auto map = induced_map(m.map, n);
      out << "H^" << n << "(" << m.name << "): " << map.source().to_string() << " -> " << map.target().to_string()
          << "  kernel " << a.kernel.to_string() << ", cokernel " << a.cokernel.to_string() << '\n';
      rows.push_back({{"degree", n},
                      {"source", module_json(map.source())},
                      {"target", module_json(map.target())},
                      {"kernel", module_json(a.kernel)},
                      {"cokernel", module_json(a.cokernel)}});
    }
    bool qi = is_quasi_iso(m.map);
    out << "quasi-isomorphism: " << yes_no(qi) << '\n';
    r.data["degrees"] = rows;
    r.data["quasi_iso"] = qi;
    if (!qi) r.status = 1;
    if (flag_a && qi) {
      auto inv = find_homotopy_inverse(m.map);
      if (inv) {
        out << "# homotopy inverse\n" << render(NamedMap{m.name + "_inv", m.target, m.source, inv->g});
        r.data["inverse"] = render(NamedMap{m.name + "_inv", m.target, m.source, inv->g});
      } else {
        out << "no homotopy inverse over " << doc.ring.name() << '\n';
        r.data["inverse"] = nullptr;
        r.status = 1;
      }
    }
    r.text = out.str();
    return r;
  });
  c_qi->add_option("file", file)->required();
  c_qi->add_option("--map", mname);
  c_qi->add_flag("--inverse", flag_a, "Search for a homotopy inverse");

  auto* c_null = sub("null-homotopy", "Search for a null-homotopy of a chain map", [&](const CoefficientRing& ring) {
    auto doc = load(file, ring);
    const auto& m = pick_map(doc, mname);
    auto s = find_null_homotopy(m.map);
    Result r;
    r.data["null_homotopic"] = s.has_value();
    if (s) {
      std::string comps = homotopy_components(*s, m.map.lo(), m.map.hi() + 1);
      r.text = m.name + " is null-homotopic\n" + comps;
      r.data["components"] = comps;
    } else {
      r.text = m.name + " is not null-homotopic over " + doc.ring.name() + "\n";
      r.status = 1;
    }
    return r;
  });
  c_null->add_option("file", file)->required();
  c_null->add_option("--map", mname);

  auto* c_homk = sub("hom-k", "Hom in the homotopy category, or in D with --degree", [&](const CoefficientRing& ring) {
    auto doc = load(file, ring);
    const auto& b = pick_complex(doc, cname, 0);
    const auto& c = pick_complex(doc, cname2, 1);
    Result r;
    FgModule h = n_given ? hom_derived(b.complex, c.complex, *n_given) : hom_in_K(b.complex, c.complex);
    r.text = (n_given ? "Hom_D(" + b.name + ", " + c.name + "[" + std::to_string(*n_given) + "]) = "
                      : "Hom_K(" + b.name + ", " + c.name + ") = ") +
             h.to_string() + "\n";
    r.data["hom"] = module_json(h);
    return r;
  });
  c_homk->add_option("file", file)->required();
  c_homk->add_option("--source", cname, "Source complex (default: first)");
  c_homk->add_option("--target", cname2, "Target complex (default: second)");
  c_homk->add_option("--degree", n_given, "Compute Hom_D(B, C[i]) instead");

  auto* c_res = sub("resolve", "Free resolution of a module", [&](const CoefficientRing& ring) {
    auto m = module_arg(ring, module_text);
    auto res = free_resolution(m);
    Result r;
    r.text = render(res.complex, "P") + "# augmentation " + res.augmentation.to_string() + "\n";
    r.data["complex"] = render(res.complex, "P");
    r.data["augmentation"] = res.augmentation.to_string();
    r.data["module"] = module_json(m);
    return r;
  });
  c_res->add_option("module", module_text, "Module, e.g. 4, 0 or Z/2+Z")->required();

  auto derived_arg = [](const CoefficientRing& ring, const std::string& text) -> std::variant<FgModule, ChainComplex> {
    std::ifstream probe(text);
    if (probe.good()) return pick_complex(load(text, ring), "").complex;
    return module_arg(ring, text);
  };
  auto* c_dt = sub("derived-tensor", "Derived tensor product of modules or complexes", [&](const CoefficientRing& ring) {
    auto a = derived_arg(ring, file), b = derived_arg(ring, file2);
    Result r;
    if (flag_a) {
      if (!std::holds_alternative<FgModule>(a) || !std::holds_alternative<FgModule>(b))
        throw UsageError("--one-sided needs two modules");
      auto mc = derived_tensor_one_sided(std::get<FgModule>(a), std::get<FgModule>(b));
      std::ostringstream out;
      json rows = json::array();
      for (int n = mc.lo(); n <= mc.hi(); ++n) {
        auto h = cohomology(mc, n);
        out << "H^" << n << " = " << h.to_string() << '\n';
        rows.push_back({{"degree", n}, {"module", module_json(h)}});
      }
      r.text = out.str();
      r.data["cohomology"] = rows;
      return r;
    }
    ChainComplex t = std::visit([](const auto& x, const auto& y) { return derived_tensor(x, y); }, a, b);
    r = cohomology_table(t, lo_or0(t), hi_or0(t));
    r.data["complex"] = render(t, "T");
    return r;
  });
  c_dt->add_option("left", file, "Module or document path")->required();
  c_dt->add_option("right", file2, "Module or document path")->required();
  c_dt->add_flag("--one-sided", flag_a, "Resolve only the left module");

  std::string m1, m2;
  auto* c_tor = sub("tor", "Tor_i(M, N)", [&](const CoefficientRing& ring) {
    if (n_opt < 0) throw UsageError("--i must be nonnegative");
    auto t = tor(module_arg(ring, m1), module_arg(ring, m2), n_opt);
    Result r;
    r.text = t.to_string() + "\n";
    r.data["tor"] = module_json(t);
    return r;
  });
  c_tor->add_option("m", m1)->required();
  c_tor->add_option("n", m2)->required();
  c_tor->add_option("--i", n_opt, "Index i")->required();

  auto* c_ext = sub("ext", "Ext^i(M, N)", [&](const CoefficientRing& ring) {
    if (n_opt < 0) throw UsageError("--i must be nonnegative");
    auto e = ext(module_arg(ring, m1), module_arg(ring, m2), n_opt);
    Result r;
    r.text = e.to_string() + "\n";
    r.data["ext"] = module_json(e);
    return r;
  });
  c_ext->add_option("m", m1)->required();
  c_ext->add_option("n", m2)->required();
  c_ext->add_option("--i", n_opt, "Index i")->required();

  auto* c_trunc = sub("truncate", "Standard truncation, or the truncation triangle", [&](const CoefficientRing& ring) {
    auto doc = load(file, ring);
    const auto& c = pick_complex(doc, cname);
    Result r;
    if (flag_a) {
      auto tt = truncation_triangle(c.complex, n_opt);
      auto verdict = exactness_verdict(tt.triangle);
      r.text = "# tau<=" + std::to_string(n_opt) + "\n" + render(tt.triangle.x(), "Low") + "# tau>=" +
               std::to_string(n_opt + 1) + "\n" + render(tt.triangle.z(), "High") +
               "triangle: " + to_string(verdict.verdict) + "\n";
      r.data["low"] = render(tt.triangle.x(), "Low");
      r.data["high"] = render(tt.triangle.z(), "High");
      r.data["verdict"] = to_string(verdict.verdict);
      if (verdict.verdict == Verdict::Refuted) r.status = 1;
      return r;
    }
    TruncationSide s;
    if (side == "below") s = TruncationSide::Below;
    else if (side == "above") s = TruncationSide::Above;
    else throw UsageError("--side must be below or above");
    auto t = truncate(c.complex, n_opt, s);
    r.text = render(t.complex, c.name);
    r.data["complex"] = r.text;
    return r;
  });
  c_trunc->add_option("file", file)->required();
  c_trunc->add_option("--n", n_opt, "Cut degree")->required();
  c_trunc->add_option("--side", side, "below (tau<=n) or above (tau>=n+1)");
  c_trunc->add_option("--complex", cname);
  c_trunc->add_flag("--triangle", flag_a, "Build tau<=n X -> X -> tau>=n+1 X -> with its verdict");

  auto* c_tv = sub("t-verdict", "Membership in the standard t-structure", [&](const CoefficientRing& ring) {
    auto doc = load(file, ring);
    const auto& c = pick_complex(doc, cname).complex;
    auto v = n_given ? standard_t_verdict(c, *n_given) : standard_t_verdict(c, lo_or0(c) - 1, hi_or0(c) + 1);
    auto h0 = heart_H0(c);
    Result r;
    r.text = verdict_table(v) + "H^0 via truncations: " + h0.to_string() + "\n";
    r.data = verdict_json(v);
    r.data["heart_H0"] = module_json(h0);
    return r;
  });
  c_tv->add_option("file", file)->required();
  c_tv->add_option("--n", n_given, "Single degree (default: the support and one beyond)");
  c_tv->add_option("--complex", cname);

  auto* c_tilt = sub("tilt-verdict", "Tilted t-structure, or the torsion pair of a module", [&](const CoefficientRing& ring) {
    Result r;
    if (!module_text.empty()) {
      auto d = torsion_decompose(module_arg(ring, module_text));
      r.text = "torsion: " + d.torsion.to_string() + "\nfree: " + d.free.to_string() + "\n" +
               (d.note.empty() ? "" : "# " + d.note + "\n");
      r.data["torsion"] = module_json(d.torsion);
      r.data["free"] = module_json(d.free);
      return r;
    }
    if (file.empty()) throw UsageError("tilt-verdict needs a document or --module");
    auto doc = load(file, ring);
    const auto& c = pick_complex(doc, cname).complex;
    auto v = n_given ? tilted_t_verdict(c, *n_given, *n_given) : tilted_t_verdict(c, lo_or0(c) - 1, hi_or0(c) + 1);
    r.text = verdict_table(v);
    r.data = verdict_json(v);
    return r;
  });
  c_tilt->add_option("file", file);
  c_tilt->add_option("--n", n_given);
  c_tilt->add_option("--complex", cname);
  c_tilt->add_option("--module", module_text, "Split a module into torsion and torsion-free parts");

  auto* c_oct = sub("octahedron", "Octahedral axiom for composable maps f, g", [&](const CoefficientRing& ring) {
    auto doc = load(file, ring);
    const auto& f = pick_map(doc, mname, 0);
    const auto& g = pick_map(doc, mname2, 1);
    auto oct = check_tr4(f.map, g.map);
    Result r;
    std::ostringstream out;
    out << "U = Cone(" << f.name << "), V = Cone(" << g.name << " " << f.name << "), W = Cone(" << g.name << ")\n";
    out << "triangle U -> V -> W -> U[1]: " << to_string(oct.exactness.verdict) << '\n';
    json braid = json::array();
    for (const auto& [name, ok] : oct.braid) {
      out << "braid " << name << ": " << (ok ? "ok" : "FAILS") << '\n';
      braid.push_back({{"square", name}, {"ok", ok}});
    }
    json rows = json::array();
    const int lo = std::min({lo_or0(oct.u.complex), lo_or0(oct.v.complex), lo_or0(oct.w.complex)});
    const int hi = std::max({hi_or0(oct.u.complex), hi_or0(oct.v.complex), hi_or0(oct.w.complex)});
    for (int n = lo; n <= hi; ++n) {
      auto a = induced_map(oct.alpha, n), b = induced_map(oct.beta, n);
      out << "H^" << n << ": " << a.source().to_string() << " -> " << a.target().to_string() << " -> "
          << b.target().to_string() << '\n';
      rows.push_back({{"degree", n}, {"U", a.source().to_string()}, {"V", a.target().to_string()},
                      {"W", b.target().to_string()}});
    }
    for (const auto& note : oct.report.notes) out << "# " << note << '\n';
    out << "TR4: " << (oct.report.pass ? "pass" : "FAIL") << '\n';
    r.text = out.str();
    r.data = {{"verdict", to_string(oct.exactness.verdict)}, {"braid", braid}, {"rows", rows},
              {"pass", oct.report.pass}, {"notes", oct.report.notes}};
    r.status = oct.report.pass ? 0 : 1;
    return r;
  });
  c_oct->add_option("file", file)->required();
  c_oct->add_option("--f", mname, "First map (default: first in the document)");
  c_oct->add_option("--g", mname2, "Second map (default: second in the document)");

  auto* c_va = sub("verify-axioms", "Check TR1-TR4 and Hom exactness on random instances", [&](const CoefficientRing& ring) {
    auto res = verify_axioms(seed, ring, instances);
    Result r;
    std::ostringstream out;
    out << "ring " << ring.name() << ", seed " << seed << ", " << instances << " instances\n";
    json rows = json::array();
    for (const auto& a : res.axioms) {
      out << a.axiom << ": " << a.passed << "/" << (a.passed + a.failed) << " passed\n";
      for (const auto& f : a.failures) out << "  " << f << '\n';
      rows.push_back({{"axiom", a.axiom}, {"passed", a.passed}, {"failed", a.failed}, {"failures", a.failures}});
    }
    out << (res.all_passed() ? "all checks passed" : "FAILURES") << '\n';
    r.text = out.str();
    r.data = {{"ring", ring.name()}, {"seed", seed}, {"instances", instances}, {"axioms", rows},
              {"pass", res.all_passed()}};
    r.status = res.all_passed() ? 0 : 1;
    return r;
  });
  c_va->add_option("--seed", seed)->required();
  c_va->add_option("--instances", instances, "Number of random instances")->check(CLI::PositiveNumber);

  auto* c_gen = sub("generate", "Random complex with known cohomology", [&](const CoefficientRing& ring) {
    RandomProfile p;
    p.lo = lo;
    p.hi = hi;
    p.max_rank = max_rank;
    p.max_torsion_disks = torsion;
    p.conjugate = !flag_a;
    if (p.lo > p.hi) throw UsageError("--lo must not exceed --hi");
    if (torsion > 0 && ring.is_field()) throw UsageError("--torsion needs integer coefficients");
    auto rc = random_complex(seed, ring, p);
    Result r;
    std::ostringstream out;
    out << render(rc.complex, "X");
    json truth = json::object();
    for (const auto& [n, m] : rc.ground_truth) {
      out << "# H^" << n << " = " << m.to_string() << '\n';
      truth[std::to_string(n)] = module_json(m);
    }
    r.text = out.str();
    r.data = {{"complex", render(rc.complex, "X")}, {"ground_truth", truth}};
    return r;
  });
  lo = -2;
  hi = 2;
  c_gen->add_option("--seed", seed)->required();
  c_gen->add_option("--lo", lo, "Lowest degree");
  c_gen->add_option("--hi", hi, "Highest degree");
  c_gen->add_option("--max-rank", max_rank, "Largest rank per degree");
  c_gen->add_option("--torsion", torsion, "Up to this many [Z -k-> Z] cells (Z only)");
  c_gen->add_flag("--no-conjugate", flag_a, "Keep the cellular basis");

  Outcome outcome;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    int code = app.exit(e, out, err);
    outcome.out = out.str();
    outcome.err = err.str();
    outcome.status = code == 0 ? 0 : 2;
    return outcome;
  }

  try {
    std::string rname = ring_name;
    if (rname.empty()) {
      const char* env = std::getenv("CHAINLAB_RING");
      rname = env && *env ? env : "Z";
    }
    CoefficientRing ring = CoefficientRing::integers();
    try {
      ring = CoefficientRing::parse(rname);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    Result r = handler(ring);
    if (as_json) {
      json j = r.data.is_object() ? r.data : json{{"result", r.data}};
      j["command"] = app.get_subcommands().front()->get_name();
      j["status"] = r.status;
      outcome.out = j.dump(2) + "\n";
    } else {
      outcome.out = r.text;
    }
    outcome.status = r.status;
  } catch (const UsageError& e) {
    outcome.err = std::string("error: ") + e.what() + "\n";
    outcome.status = 2;
  } catch (const Unsupported& e) {
    outcome.err = std::string("unsupported: ") + e.what() + "\n";
    outcome.status = 2;
  } catch (const std::invalid_argument& e) {
    outcome.err = std::string("error: ") + e.what() + "\n";
    outcome.status = 2;
  } catch (const Error& e) {
    outcome.err = std::string("error: ") + e.what() + "\n";
    outcome.status = 1;
  }
  return outcome;
}

}  // namespace chainlab::cli
