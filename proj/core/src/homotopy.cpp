#include "chainlab/homotopy.hpp"

#include <algorithm>

#include "chainlab/error.hpp"
#include "chainlab/linalg.hpp"

namespace chainlab {

namespace {

using Term = LinearSystem::Term;

ExactMatrix id(const CoefficientRing& ring, std::size_t n) { return ExactMatrix::identity(ring, n); }

int support_lo(const ChainComplex& a, const ChainComplex& b) {
  if (a.is_zero()) return b.lo();
  if (b.is_zero()) return a.lo();
  return std::min(a.lo(), b.lo());
}

int support_hi(const ChainComplex& a, const ChainComplex& b) {
  if (a.is_zero()) return b.hi();
  if (b.is_zero()) return a.hi();
  return std::max(a.hi(), b.hi());
}

// Homotopy unknowns s(n) : src^n -> tgt^{n-1} for n in [lo, hi + 1].
struct HomotopyUnknowns {
  int lo, hi;
  std::vector<std::size_t> ids;

  HomotopyUnknowns(LinearSystem& sys, const ChainComplex& src, const ChainComplex& tgt, int lo_, int hi_)
      : lo(lo_), hi(hi_) {
    for (int n = lo; n <= hi + 1; ++n) ids.push_back(sys.add_unknown(tgt.rank(n - 1), src.rank(n)));
  }
  std::size_t at(int n) const { return ids[static_cast<std::size_t>(n - lo)]; }
  std::map<int, ExactMatrix> collect(const std::vector<ExactMatrix>& sol) const {
    std::map<int, ExactMatrix> out;
    for (int n = lo; n <= hi + 1; ++n) out.emplace(n, sol[at(n)]);
    return out;
  }
};

// Adds  sign * (s(n+1) d_src(n) + d_tgt(n-1) s(n))  as terms.
void add_boundary_terms(std::vector<Term>& terms, const HomotopyUnknowns& s, const ChainComplex& src,
                        const ChainComplex& tgt, int n, const Scalar& sign) {
  const auto& ring = src.ring();
  terms.push_back({id(ring, tgt.rank(n)).scaled(sign), s.at(n + 1), src.diff(n)});
  terms.push_back({tgt.diff(n - 1).scaled(sign), s.at(n), id(ring, src.rank(n))});
}

}  // namespace

std::optional<Homotopy> find_null_homotopy(const ChainMap& f) {
  const auto& src = f.source();
  const auto& tgt = f.target();
  const int lo = f.lo(), hi = f.hi();
  LinearSystem sys(f.ring());
  HomotopyUnknowns s(sys, src, tgt, lo, hi);
  for (int n = lo; n <= hi; ++n) {
    std::vector<Term> terms;
    add_boundary_terms(terms, s, src, tgt, n, Scalar(1));
    sys.add_equation(terms, f.component(n));
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  Homotopy h(f, ChainMap::zero(src, tgt), s.collect(*sol));
  if (!validate(h).ok) throw Error("find_null_homotopy: solver returned an invalid witness");
  return h;
}

std::optional<Homotopy> find_homotopy(const ChainMap& f, const ChainMap& g) {
  auto h = find_null_homotopy(f - g);
  if (!h) return std::nullopt;
  std::map<int, ExactMatrix> comps;
  for (int n = f.lo(); n <= f.hi() + 1; ++n) comps.emplace(n, h->component(n));
  return Homotopy(f, g, comps);
}

HomInK::HomInK(const ChainComplex& b, const ChainComplex& c)
    : b_(b), c_(c), sq_(Subquotient::from_generators(ExactMatrix(b.ring(), 0, 0), ExactMatrix(b.ring(), 0, 0))) {
  require_same_ring(b.ring(), c.ring(), "hom_in_K");
  const auto& ring = b.ring();
  lo_ = support_lo(b, c);
  hi_ = support_hi(b, c);

  // Chain-map constraints on the unknowns f(n), n in [lo - 1, hi + 1].
  LinearSystem maps(ring);
  std::vector<std::size_t> fid;
  for (int n = lo_ - 1; n <= hi_ + 1; ++n) {
    offsets_.push_back(maps.num_variables());
    fid.push_back(maps.add_unknown(c.rank(n), b.rank(n)));
  }
  ambient_ = maps.num_variables();
  auto f_at = [&](int n) { return fid[static_cast<std::size_t>(n - lo_ + 1)]; };
  for (int n = lo_ - 1; n <= hi_; ++n) {
    maps.add_equation({{c.diff(n), f_at(n), id(ring, b.rank(n))},
                       {id(ring, c.rank(n + 1)).scaled(-1), f_at(n + 1), b.diff(n)}},
                      ExactMatrix(ring, c.rank(n + 1), b.rank(n)));
  }
  ExactMatrix cycles = kernel_basis(maps.coefficient_matrix());

  // The operator s ↦ s d + d s, one row per ambient coordinate.
  LinearSystem hs(ring);
  HomotopyUnknowns s(hs, b, c, lo_ - 1, hi_ + 1);
  for (int n = lo_ - 1; n <= hi_ + 1; ++n) {
    std::vector<Term> terms;
    add_boundary_terms(terms, s, b, c, n, Scalar(1));
    hs.add_equation(terms, ExactMatrix(ring, c.rank(n), b.rank(n)), true);
  }
  ExactMatrix null_maps = hs.coefficient_matrix();
  sq_ = Subquotient::from_generators(cycles, null_maps);
}

std::size_t HomInK::offset(int n) const {
  if (n < lo_ - 1) return 0;
  if (n > hi_ + 1) return ambient_;
  return offsets_[static_cast<std::size_t>(n - lo_ + 1)];
}

ExactMatrix HomInK::vectorize(const ChainMap& f) const {
  if (f.source() != b_ || f.target() != c_) throw ShapeError("HomInK::vectorize: wrong complexes");
  ExactMatrix v(b_.ring(), ambient_, 1);
  for (int n = lo_ - 1; n <= hi_ + 1; ++n) {
    ExactMatrix m = f.component(n);
    std::size_t off = offset(n);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (sgn(m.at(i, j)) != 0) v.set(off + i * m.cols() + j, 0, m.at(i, j));
  }
  return v;
}

ChainMap HomInK::devectorize(const ExactMatrix& column) const {
  std::map<int, ExactMatrix> comps;
  for (int n = lo_ - 1; n <= hi_ + 1; ++n) {
    ExactMatrix m(b_.ring(), c_.rank(n), b_.rank(n));
    std::size_t off = offset(n);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const Scalar& x = column.at(off + i * m.cols() + j, 0);
        if (sgn(x) != 0) m.set(i, j, x);
      }
    comps.emplace(n, m);
  }
  return ChainMap(b_, c_, comps);
}

ChainMap HomInK::generator(std::size_t i) const {
  return devectorize(sq_.generators().col_range(i, 1));
}

ExactMatrix HomInK::class_of(const ChainMap& f) const {
  auto c = sq_.coordinates(vectorize(f));
  if (!c) throw ValidationError("HomInK::class_of: not a chain map");
  return *c;
}

FgModule hom_in_K(const ChainComplex& b, const ChainComplex& c) { return HomInK(b, c).module(); }

ModuleMap hom_K_post(const ChainMap& u, const HomInK& source, const HomInK& target) {
  if (source.source() != target.source() || u.source() != source.target() || u.target() != target.target()) {
    throw ShapeError("hom_K_post: complexes do not match");
  }
  const auto& p = source.source();
  const auto& ring = u.ring();
  ExactMatrix m(ring, target.ambient_rank(), source.ambient_rank());
  for (int n = source.lo() - 1; n <= source.hi() + 1; ++n) {
    if (p.rank(n) == 0 || u.source().rank(n) == 0 || u.target().rank(n) == 0) continue;
    m.paste(target.offset(n), source.offset(n), kronecker(u.component(n), id(ring, p.rank(n))));
  }
  return induced_map(m, source.presentation(), target.presentation());
}

ModuleMap hom_K_pre(const ChainMap& u, const HomInK& source, const HomInK& target) {
  if (source.target() != target.target() || u.target() != source.source() || u.source() != target.source()) {
    throw ShapeError("hom_K_pre: complexes do not match");
  }
  const auto& p = source.target();
  const auto& ring = u.ring();
  ExactMatrix m(ring, target.ambient_rank(), source.ambient_rank());
  for (int n = source.lo() - 1; n <= source.hi() + 1; ++n) {
    if (p.rank(n) == 0 || u.source().rank(n) == 0 || u.target().rank(n) == 0) continue;
    m.paste(target.offset(n), source.offset(n), kronecker(id(ring, p.rank(n)), u.component(n).transpose()));
  }
  return induced_map(m, source.presentation(), target.presentation());
}

std::optional<HomotopyInverse> find_homotopy_inverse(const ChainMap& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& ring = f.ring();
  const int lo = f.lo(), hi = f.hi();
  LinearSystem sys(ring);
  std::vector<std::size_t> gid;
  for (int n = lo - 1; n <= hi + 1; ++n) gid.push_back(sys.add_unknown(x.rank(n), y.rank(n)));
  auto g_at = [&](int n) { return gid[static_cast<std::size_t>(n - lo + 1)]; };
  HomotopyUnknowns s(sys, x, x, lo, hi);
  HomotopyUnknowns t(sys, y, y, lo, hi);

  for (int n = lo - 1; n <= hi; ++n) {
    sys.add_equation({{x.diff(n), g_at(n), id(ring, y.rank(n))},
                      {id(ring, x.rank(n + 1)).scaled(-1), g_at(n + 1), y.diff(n)}},
                     ExactMatrix(ring, x.rank(n + 1), y.rank(n)));
  }
  for (int n = lo; n <= hi; ++n) {
    std::vector<Term> left{{id(ring, x.rank(n)), g_at(n), f.component(n)}};
    add_boundary_terms(left, s, x, x, n, Scalar(-1));
    sys.add_equation(left, id(ring, x.rank(n)));
    std::vector<Term> right{{f.component(n), g_at(n), id(ring, y.rank(n))}};
    add_boundary_terms(right, t, y, y, n, Scalar(-1));
    sys.add_equation(right, id(ring, y.rank(n)));
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  std::map<int, ExactMatrix> gc;
  for (int n = lo - 1; n <= hi + 1; ++n) gc.emplace(n, (*sol)[g_at(n)]);
  ChainMap g(y, x, gc);
  HomotopyInverse out{g, Homotopy(g * f, ChainMap::identity(x), s.collect(*sol)),
                      Homotopy(f * g, ChainMap::identity(y), t.collect(*sol))};
  if (!validate(g).ok || !validate(out.left).ok || !validate(out.right).ok) {
    throw Error("find_homotopy_inverse: solver returned an invalid witness");
  }
  return out;
}

std::optional<ExactnessCertificate> certify_exact(const Triangle& t) {
  const auto& f = t.f();
  const auto& g = t.g();
  const auto& h = t.h();
  const auto& x = t.x();
  const auto& z = t.z();
  const auto& ring = f.ring();
  Cone cn = cone(f);
  const auto& c = cn.complex;

  if (z == c && g == cn.inject && h == cn.project) {
    ExactnessCertificate cert{ChainMap::identity(c), Homotopy(cn.project, cn.project)};
    return cert;
  }

  const int lo = support_lo(c, z) - 1;
  const int hi = support_hi(c, z) + 1;

  // w(n) = [W(n) | g(n)] with W(n) : X^{n+1} -> Z^n.
  LinearSystem sys(ring);
  std::vector<std::size_t> wid;
  for (int n = lo - 1; n <= hi + 1; ++n) wid.push_back(sys.add_unknown(z.rank(n), x.rank(n + 1)));
  auto w_at = [&](int n) { return wid[static_cast<std::size_t>(n - lo + 1)]; };
  // k(n) : Cone^n -> X[1]^{n-1} = X^n.
  HomotopyUnknowns k(sys, c, shift(x, 1), lo, hi);

  for (int n = lo - 1; n <= hi; ++n) {
    // d_Z W(n) + W(n+1) d_X(n+1) = g(n+1) f(n+1)
    sys.add_equation({{z.diff(n), w_at(n), id(ring, x.rank(n + 1))},
                      {id(ring, z.rank(n + 1)), w_at(n + 1), x.diff(n + 1)}},
                     g.component(n + 1) * f.component(n + 1));
  }
  for (int n = lo; n <= hi; ++n) {
    // h W(n) E - k(n+1) d_C(n) + d_X(n) k(n) = project(n) - [0 | h g]
    ExactMatrix e = cn.project.component(n);
    ExactMatrix rhs = e - hstack(ExactMatrix(ring, x.rank(n + 1), x.rank(n + 1)),
                                 h.component(n) * g.component(n));
    std::vector<Term> terms{{h.component(n), w_at(n), e}};
    add_boundary_terms(terms, k, c, shift(x, 1), n, Scalar(-1));
    sys.add_equation(terms, rhs);
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;

  std::map<int, ExactMatrix> wc;
  for (int n = lo; n <= hi; ++n) wc.emplace(n, hstack((*sol)[w_at(n)], g.component(n)));
  ChainMap w(c, z, wc);
  Homotopy hk(h * w, cn.project, k.collect(*sol));
  if (!validate(w).ok || !(w * cn.inject == g) || !validate(hk).ok) {
    throw Error("certify_exact: solver returned an invalid witness");
  }
  if (!is_quasi_iso(w)) return std::nullopt;
  return ExactnessCertificate{w, hk};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified:
      return "certified";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Unknown:
      break;
  }
  return "unknown";
}

ExactnessReport exactness_verdict(const Triangle& t) {
  LongExactSequence les = triangle_les(t);
  auto cert = certify_exact(t);
  Verdict v = Verdict::Unknown;
  if (cert) {
    v = Verdict::Certified;
  } else if (!les.all_exact() || t.x().ring().is_field()) {
    v = Verdict::Refuted;
  }
  return {v, std::move(cert), std::move(les)};
}

std::vector<CofiberStep> iterated_cofiber(const ChainMap& f, int length) {
  if (length < 1) throw std::invalid_argument("iterated_cofiber: length must be positive");
  std::vector<CofiberStep> steps;
  Triangle t = cone_triangle(f);
  for (int k = 0; k < length; ++k) {
    if (k > 0) t = rotate(t);
    steps.push_back({t, cone(t.f()).complex, exactness_verdict(t)});
  }
  return steps;
}

}  // namespace chainlab
