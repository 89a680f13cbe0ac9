#include "chainlab/axioms.hpp"

#include <algorithm>

#include "chainlab/error.hpp"

namespace chainlab {

namespace {

ExactMatrix id(const CoefficientRing& ring, std::size_t n) { return ExactMatrix::identity(ring, n); }
ExactMatrix zero(const CoefficientRing& ring, std::size_t r, std::size_t c) { return ExactMatrix::zero(ring, r, c); }

// Certified passes; Unknown passes on an exact cohomology sequence (only
// possible over Z) with a note; Refuted fails.
void require_exact(CheckReport& rep, const Triangle& t, const std::string& what) {
  auto r = exactness_verdict(t);
  if (r.verdict == Verdict::Certified) return;
  if (r.verdict == Verdict::Unknown && r.les.all_exact()) {
    rep.notes.push_back(what + ": no integral certificate, cohomology sequence exact");
    return;
  }
  rep.fail(what + ": " + to_string(r.verdict));
}

bool homotopic(const ChainMap& a, const ChainMap& b) { return find_homotopy(a, b).has_value(); }

int lo_of(const ChainComplex& a, const ChainComplex& b) {
  if (a.is_zero()) return b.lo();
  if (b.is_zero()) return a.lo();
  return std::min(a.lo(), b.lo());
}

int hi_of(const ChainComplex& a, const ChainComplex& b) {
  if (a.is_zero()) return b.hi();
  if (b.is_zero()) return a.hi();
  return std::max(a.hi(), b.hi());
}

}  // namespace

CheckReport check_tr1(const ChainMap& f) {
  CheckReport rep{"TR1", true, {}};
  require_valid(f);
  require_exact(rep, cone_triangle(f), "cone triangle");

  const auto& x = f.source();
  ChainComplex nothing(f.ring());
  Triangle trivial(ChainMap::identity(x), ChainMap::zero(x, nothing), ChainMap::zero(nothing, shift(x, 1)));
  require_exact(rep, trivial, "X -> X -> 0 -> X[1]");

  auto c = cone(ChainMap::identity(x)).complex;
  if (!find_null_homotopy(ChainMap::identity(c))) rep.fail("cone of the identity is not contractible");
  return rep;
}

CheckReport check_tr2(const Triangle& t) {
  CheckReport rep{"TR2", true, {}};
  auto base = exactness_verdict(t);
  if (base.verdict == Verdict::Refuted) {
    rep.fail("input triangle is not exact");
    return rep;
  }
  require_exact(rep, rotate(t), "rotation");
  require_exact(rep, rotate(rotate(t)), "second rotation");
  require_exact(rep, unrotate(t), "inverse rotation");
  // unrotate ∘ rotate is (-(-f[1])[-1], g, h) = (f, g, h)
  if (!(unrotate(rotate(t)) == t)) rep.fail("rotate and unrotate do not cancel");
  return rep;
}

Tr3Result check_tr3(const ChainMap& f, const ChainMap& f2, const ChainMap& u, const ChainMap& v,
                    const std::optional<Homotopy>& s) {
  Tr3Result out{CheckReport{"TR3", true, {}}, std::nullopt, std::nullopt};
  for (const ChainMap* m : {&f, &f2, &u, &v}) require_valid(*m);
  if (u.source() != f.source() || v.source() != f.target() || u.target() != f2.source() ||
      v.target() != f2.target()) {
    throw ShapeError("check_tr3: square does not fit together");
  }
  const ChainMap vf = v * f, fu = f2 * u;
  if (s) {
    if (!validate(*s).ok || s->from_map() != vf || s->to_map() != fu)
      throw ValidationError("check_tr3: supplied homotopy does not witness v∘f ≃ f2∘u");
    out.square = *s;
  } else {
    out.square = find_homotopy(vf, fu);
  }
  if (!out.square) {
    out.report.fail("square does not commute up to homotopy");
    return out;
  }

  const auto& ring = f.ring();
  Cone c1 = cone(f), c2 = cone(f2);
  const auto& y = f.target();
  const auto& x2 = f2.source();
  std::map<int, ExactMatrix> comps;
  for (int n = lo_of(c1.complex, c2.complex); n <= hi_of(c1.complex, c2.complex); ++n) {
    if (c1.complex.rank(n) == 0 && c2.complex.rank(n) == 0) continue;
    comps.emplace(n, block2x2(u.component(n + 1), zero(ring, x2.rank(n + 1), y.rank(n)),
                              out.square->component(n + 1), v.component(n)));
  }
  ChainMap fill(c1.complex, c2.complex, comps);
  if (!validate(fill).ok) throw Error("check_tr3: fill is not a chain map");
  if (fill * c1.inject != c2.inject * v) throw Error("check_tr3: left square of the fill fails");
  if (c2.project * fill != shift(u, 1) * c1.project) throw Error("check_tr3: right square of the fill fails");
  out.fill = fill;
  return out;
}

Octahedron check_tr4(const ChainMap& f, const ChainMap& g) {
  require_valid(f);
  require_valid(g);
  if (f.target() != g.source()) throw ShapeError("check_tr4: maps are not composable");
  const auto& ring = f.ring();
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& z = g.target();
  const ChainMap gf = g * f;
  Cone u = cone(f), v = cone(gf), w = cone(g);
  ChainComplex u1 = shift(u.complex, 1);

  std::map<int, ExactMatrix> a, b, c;
  for (int n = std::min({u.complex.is_zero() ? 0 : u.complex.lo(), v.complex.is_zero() ? 0 : v.complex.lo(),
                         w.complex.is_zero() ? 0 : w.complex.lo()}) - 1;
       n <= std::max({u.complex.hi(), v.complex.hi(), w.complex.hi()}) + 1; ++n) {
    const std::size_t xr = x.rank(n + 1), yr = y.rank(n), zr = z.rank(n), y1 = y.rank(n + 1);
    // (x, y) ↦ (x, g y)
    a.emplace(n, block2x2(id(ring, xr), zero(ring, xr, yr), zero(ring, zr, xr), g.component(n)));
    // (x, z) ↦ (f x, z)
    b.emplace(n, block2x2(f.component(n + 1), zero(ring, y1, zr), zero(ring, zr, xr), id(ring, zr)));
    // (y, z) ↦ (0, y) in U[1]^n = X^{n+2} ⊕ Y^{n+1}
    const std::size_t x2 = x.rank(n + 2);
    c.emplace(n, block2x2(zero(ring, x2, y1), zero(ring, x2, zr), id(ring, y1), zero(ring, y1, zr)));
  }
  ChainMap alpha(u.complex, v.complex, a), beta(v.complex, w.complex, b), gamma(w.complex, u1, c);

  Octahedron out{u, v, w, alpha, beta, gamma, {}, {}, CheckReport{"TR4", true, {}}};
  for (const auto* m : {&alpha, &beta, &gamma})
    if (!validate(*m).ok) throw Error("check_tr4: octahedral map is not a chain map");

  Triangle t(alpha, beta, gamma);
  out.exactness = exactness_verdict(t);
  if (out.exactness.verdict == Verdict::Certified) {
  } else if (out.exactness.verdict == Verdict::Unknown && out.exactness.les.all_exact()) {
    out.report.notes.push_back("U -> V -> W: no integral certificate, cohomology sequence exact");
  } else {
    out.report.fail("U -> V -> W -> U[1] is " + to_string(out.exactness.verdict));
  }

  auto braid = [&](const std::string& name, const ChainMap& lhs, const ChainMap& rhs) {
    bool ok = homotopic(lhs, rhs);
    out.braid.emplace_back(name, ok);
    if (!ok) out.report.fail("braid square fails: " + name);
  };
  braid("alpha ∘ inject_U = inject_V ∘ g", alpha * u.inject, v.inject * g);
  braid("beta ∘ inject_V = inject_W", beta * v.inject, w.inject);
  braid("project_V ∘ alpha = project_U", v.project * alpha, u.project);
  braid("project_W ∘ beta = f[1] ∘ project_V", w.project * beta, shift(f, 1) * v.project);
  braid("gamma = inject_U[1] ∘ project_W", gamma, shift(u.inject, 1) * w.project);
  return out;
}

CheckReport check_cohomological_functor(const Triangle& t, const ChainComplex& probe) {
  CheckReport rep{"cohomological", true, {}};
  const ChainMap f1 = -shift(t.f(), 1);
  std::vector<ChainComplex> objs{t.x(), t.y(), t.z(), shift(t.x(), 1), shift(t.y(), 1)};
  std::vector<const ChainMap*> maps{&t.f(), &t.g(), &t.h(), &f1};

  std::vector<HomInK> cov, contra;
  for (const auto& o : objs) {
    cov.emplace_back(probe, o);
    contra.emplace_back(o, probe);
  }
  std::vector<ModuleMap> post, pre;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    post.push_back(hom_K_post(*maps[i], cov[i], cov[i + 1]));
    pre.push_back(hom_K_pre(*maps[i], contra[i + 1], contra[i]));
  }
  static const char* joints[] = {"Y", "Z", "X[1]"};
  for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
    if (!is_exact_at(post[i], post[i + 1])) rep.fail(std::string("Hom(P, -) not exact at ") + joints[i]);
    if (!is_exact_at(pre[i + 1], pre[i])) rep.fail(std::string("Hom(-, P) not exact at ") + joints[i]);
  }
  return rep;
}

bool VerifyAxiomsResult::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomSummary& a) { return a.failed == 0; });
}

RandomProfile axiom_profile() {
  RandomProfile p;
  p.lo = -1;
  p.hi = 1;
  p.max_rank = 3;
  p.max_spheres = 2;
  p.max_disks = 2;
  p.entry_bound = 3;
  return p;
}

namespace {

// Homotopy with random entries in {-1, 0, 1} between two zero maps; its
// boundary is a random null-homotopic map x -> y.
ChainMap random_null_homotopic(Rng& rng, const ChainComplex& x, const ChainComplex& y) {
  const auto& ring = x.ring();
  std::map<int, ExactMatrix> s;
  for (int n = lo_of(x, y); n <= hi_of(x, y) + 1; ++n) {
    ExactMatrix m(ring, y.rank(n - 1), x.rank(n));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m.set(i, j, Scalar(rng.uniform(-1, 1)));
    s.emplace(n, m);
  }
  return Homotopy(ChainMap::zero(x, y), ChainMap::zero(x, y), s).boundary();
}

void record(AxiomSummary& s, const CheckReport& r, std::size_t instance) {
  if (r.pass) {
    ++s.passed;
    return;
  }
  ++s.failed;
  if (s.failures.size() < 5) {
    std::string msg = "instance " + std::to_string(instance);
    for (const auto& n : r.notes) msg += "; " + n;
    s.failures.push_back(msg);
  }
}

}  // namespace

VerifyAxiomsResult verify_axioms(std::uint64_t seed, const CoefficientRing& ring, std::size_t instances,
                                 const RandomProfile& profile) {
  VerifyAxiomsResult out;
  out.ring = ring;
  out.seed = seed;
  out.instances = instances;
  out.axioms = {{"TR1"}, {"TR2"}, {"TR3"}, {"TR4"}, {"cohomological"}};
  Rng rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    auto x = random_cell_complex(rng, ring, profile);
    auto y = random_cell_complex(rng, ring, profile);
    auto z = random_cell_complex(rng, ring, profile);
    ChainMap f = random_chain_map(rng, x, y);
    ChainMap g = random_chain_map(rng, y, z);

    record(out.axioms[0], check_tr1(f), i);
    record(out.axioms[1], check_tr2(cone_triangle(g)), i);

    // A square that commutes only up to homotopy: f' = f2 ∘ u + (s d + d s).
    ChainMap u = random_chain_map(rng, x, z);
    ChainMap f2 = random_chain_map(rng, z, y);
    ChainMap fu = f2 * u + random_null_homotopic(rng, x.complex, y.complex);
    auto tr3 = check_tr3(fu, f2, u, ChainMap::identity(y.complex));
    record(out.axioms[2], tr3.report, i);

    record(out.axioms[3], check_tr4(f, g).report, i);

    auto probe = random_cell_complex(rng, ring, profile);
    record(out.axioms[4], check_cohomological_functor(cone_triangle(f), probe.complex), i);
  }
  return out;
}

}  // namespace chainlab
