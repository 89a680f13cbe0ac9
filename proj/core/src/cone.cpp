#include "chainlab/cone.hpp"

#include <algorithm>

#include "chainlab/error.hpp"
#include "chainlab/linalg.hpp"

namespace chainlab {

namespace {

ExactMatrix id(const CoefficientRing& ring, std::size_t n) { return ExactMatrix::identity(ring, n); }
ExactMatrix zero(const CoefficientRing& ring, std::size_t r, std::size_t c) { return ExactMatrix(ring, r, c); }

int lo_of(std::initializer_list<const ChainComplex*> cs, int fallback) {
  int lo = fallback;
  bool any = false;
  for (auto* c : cs) {
    if (c->is_zero()) continue;
    lo = any ? std::min(lo, c->lo()) : c->lo();
    any = true;
  }
  return lo;
}

int hi_of(std::initializer_list<const ChainComplex*> cs, int fallback) {
  int hi = fallback;
  bool any = false;
  for (auto* c : cs) {
    if (c->is_zero()) continue;
    hi = any ? std::max(hi, c->hi()) : c->hi();
    any = true;
  }
  return hi;
}

}  // namespace

Cone cone(const ChainMap& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& ring = f.ring();
  const int lo = std::min(x.is_zero() ? y.lo() : x.lo() - 1, y.is_zero() ? x.lo() - 1 : y.lo());
  const int hi = std::max(x.is_zero() ? y.hi() : x.hi() - 1, y.is_zero() ? x.hi() - 1 : y.hi());

  std::vector<std::size_t> ranks;
  std::map<int, ExactMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(x.rank(n + 1) + y.rank(n));
    diffs.emplace(n, block2x2(-x.diff(n + 1), zero(ring, x.rank(n + 2), y.rank(n)),
                              f.component(n + 1), y.diff(n)));
  }
  ChainComplex c(ring, lo, ranks, diffs);
  ChainComplex x1 = shift(x, 1);
  std::map<int, ExactMatrix> inj, proj;
  for (int n = lo; n <= hi; ++n) {
    inj.emplace(n, vstack(zero(ring, x.rank(n + 1), y.rank(n)), id(ring, y.rank(n))));
    proj.emplace(n, hstack(id(ring, x.rank(n + 1)), zero(ring, x.rank(n + 1), y.rank(n))));
  }
  return {c, ChainMap(y, c, inj), ChainMap(c, x1, proj)};
}

Cylinder cylinder(const ChainMap& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& ring = f.ring();
  const int lo = std::min(x.is_zero() ? y.lo() : x.lo() - 1, y.is_zero() ? x.lo() - 1 : y.lo());
  const int hi = std::max(x.is_zero() ? y.hi() : x.hi(), y.is_zero() ? x.hi() : y.hi());

  auto rank = [&](int n) { return x.rank(n) + x.rank(n + 1) + y.rank(n); };
  std::vector<std::size_t> ranks;
  std::map<int, ExactMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(rank(n));
    ExactMatrix d(ring, rank(n + 1), rank(n));
    const std::size_t a = x.rank(n), b = x.rank(n + 1), a1 = x.rank(n + 1), b1 = x.rank(n + 2);
    // Rows: X^{n+1} | X^{n+2} | Y^{n+1}; columns: X^n | X^{n+1} | Y^n.
    d.paste(0, 0, x.diff(n));
    d.paste(0, a, -id(ring, b));
    d.paste(a1, a, -x.diff(n + 1));
    d.paste(a1 + b1, a, f.component(n + 1));
    d.paste(a1 + b1, a + b, y.diff(n));
    diffs.emplace(n, d);
  }
  ChainComplex cyl(ring, lo, ranks, diffs);
  Cone cn = cone(f);

  std::map<int, ExactMatrix> in_y, out_y, in_x, to_cone, compose, s;
  for (int n = lo; n <= hi; ++n) {
    const std::size_t a = x.rank(n), b = x.rank(n + 1), c = y.rank(n);
    in_y.emplace(n, vstack(zero(ring, a + b, c), id(ring, c)));
    out_y.emplace(n, hstack(hstack(f.component(n), zero(ring, c, b)), id(ring, c)));
    in_x.emplace(n, vstack(id(ring, a), zero(ring, b + c, a)));
    to_cone.emplace(n, hstack(zero(ring, b + c, a), id(ring, b + c)));
    // s: Cyl^n -> Cyl^{n-1} = X^{n-1} ⊕ X^n ⊕ Y^{n-1}, (x', x, y) ↦ (0, -x', 0).
    ExactMatrix sn(ring, rank(n - 1), rank(n));
    sn.paste(x.rank(n - 1), 0, -id(ring, a));
    s.emplace(n, sn);
  }
  ChainMap iy(y, cyl, in_y), oy(cyl, y, out_y);
  ChainMap idc = ChainMap::identity(cyl);
  Homotopy h(idc, iy * oy, s);
  return {cyl, iy, oy, ChainMap(x, cyl, in_x), ChainMap(cyl, cn.complex, to_cone), h};
}

SesComparison ses_compare(const ChainMap& f, const std::map<int, ExactMatrix>& complements) {
  require_valid(f);
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& ring = f.ring();
  const int lo = f.lo() - 1, hi = f.hi() + 1;

  // Per degree: s (section), r (retraction onto X), p (projection onto Q).
  std::map<int, ExactMatrix> sec, ret, pro;
  std::vector<std::size_t> qranks;
  for (int n = lo; n <= hi; ++n) {
    auto it = complements.find(n);
    ExactMatrix s = it != complements.end() ? it->second : zero(ring, y.rank(n), 0);
    if (s.rows() != y.rank(n)) {
      throw ShapeError("ses_compare: complement in degree " + std::to_string(n) + " has " +
                       std::to_string(s.rows()) + " rows, expected " + std::to_string(y.rank(n)));
    }
    require_same_ring(ring, s.ring(), "ses_compare");
    ExactMatrix m = hstack(f.component(n), s);
    auto inv = m.is_square() ? inverse(m) : std::nullopt;
    if (!inv) {
      throw ValidationError("ses_compare: splitting data inconsistent in degree " + std::to_string(n) +
                            " ([f | s] is not invertible over " + ring.name() + ")");
    }
    sec.emplace(n, s);
    ret.emplace(n, inv->row_range(0, x.rank(n)));
    pro.emplace(n, inv->row_range(x.rank(n), s.cols()));
    qranks.push_back(s.cols());
  }
  auto get = [&](const std::map<int, ExactMatrix>& m, int n, std::size_t rows, std::size_t cols) {
    auto it = m.find(n);
    return it != m.end() ? it->second : zero(ring, rows, cols);
  };
  auto qrank = [&](int n) { return (n >= lo && n <= hi) ? qranks[static_cast<std::size_t>(n - lo)] : 0; };
  auto s_at = [&](int n) { return get(sec, n, y.rank(n), qrank(n)); };
  auto r_at = [&](int n) { return get(ret, n, x.rank(n), y.rank(n)); };
  auto p_at = [&](int n) { return get(pro, n, qrank(n), y.rank(n)); };

  std::map<int, ExactMatrix> dq;
  for (int n = lo; n <= hi; ++n) dq.emplace(n, p_at(n + 1) * y.diff(n) * s_at(n));
  ChainComplex q(ring, lo, qranks, dq);

  Cone cn = cone(f);
  std::map<int, ExactMatrix> qmap, phi, psi, h;
  for (int n = lo; n <= hi; ++n) {
    qmap.emplace(n, p_at(n));
    phi.emplace(n, hstack(zero(ring, qrank(n), x.rank(n + 1)), p_at(n)));
    ExactMatrix top = r_at(n + 1) * (s_at(n + 1) * q.diff(n) - y.diff(n) * s_at(n));
    psi.emplace(n, vstack(top, s_at(n)));
    // h: Cone^n -> Cone^{n-1} = X^n ⊕ Y^{n-1}, (x, y) ↦ (r y, 0).
    ExactMatrix hn(ring, cn.complex.rank(n - 1), cn.complex.rank(n));
    hn.paste(0, x.rank(n + 1), r_at(n));
    h.emplace(n, hn);
  }
  ChainMap ph(cn.complex, q, phi), ps(q, cn.complex, psi);
  Homotopy hom(ChainMap::identity(cn.complex), ps * ph, h);
  return {q, ChainMap(y, q, qmap), ph, ps, hom};
}

Triangle::Triangle(ChainMap f, ChainMap g, ChainMap h)
    : f_(std::move(f)), g_(std::move(g)), h_(std::move(h)) {
  if (f_.target() != g_.source()) throw ShapeError("Triangle: target(f) != source(g)");
  if (g_.target() != h_.source()) throw ShapeError("Triangle: target(g) != source(h)");
  if (h_.target() != shift(f_.source(), 1)) throw ShapeError("Triangle: target(h) != source(f)[1]");
}

Triangle cone_triangle(const ChainMap& f) {
  Cone c = cone(f);
  return Triangle(f, c.inject, c.project);
}

Triangle rotate(const Triangle& t) { return Triangle(t.g(), t.h(), -shift(t.f(), 1)); }

Triangle unrotate(const Triangle& t) { return Triangle(-shift(t.h(), -1), t.f(), t.g()); }

Triangle shift(const Triangle& t, int k) {
  return Triangle(shift(t.f(), k), shift(t.g(), k), shift(t.h(), k));
}

bool LongExactSequence::all_exact() const {
  return std::all_of(exact.begin(), exact.end(), [](bool b) { return b; });
}

LongExactSequence make_les(std::vector<ModuleMap> maps, std::vector<std::string> labels) {
  LongExactSequence les{std::move(maps), std::move(labels), {}};
  for (std::size_t i = 0; i + 1 < les.maps.size(); ++i)
    les.exact.push_back(is_exact_at(les.maps[i], les.maps[i + 1]));
  return les;
}

LongExactSequence triangle_les(const Triangle& t) {
  const auto& x = t.x();
  const auto& y = t.y();
  const auto& z = t.z();
  const int lo = lo_of({&y, &z}, x.lo() - 1);
  const int lo_all = x.is_zero() ? lo : std::min(lo, x.lo() - 1);
  const int hi = hi_of({&x, &y, &z}, 0);
  std::vector<ModuleMap> maps;
  std::vector<std::string> labels;
  if (x.is_zero() && y.is_zero() && z.is_zero()) return make_les({}, {});
  for (int n = lo_all; n <= hi; ++n) {
    Subquotient hx = cohomology_presentation(x, n);
    Subquotient hy = cohomology_presentation(y, n);
    Subquotient hz = cohomology_presentation(z, n);
    Subquotient hx1 = cohomology_presentation(x, n + 1);
    const std::string deg = std::to_string(n);
    maps.push_back(induced_map(t.f().component(n), hx, hy));
    labels.push_back("H^" + deg + "(f)");
    maps.push_back(induced_map(t.g().component(n), hy, hz));
    labels.push_back("H^" + deg + "(g)");
    maps.push_back(induced_map(t.h().component(n), hz, hx1));
    labels.push_back("H^" + deg + "(h)");
  }
  return make_les(std::move(maps), std::move(labels));
}

LongExactSequence cofiber_les(const ChainMap& f) { return triangle_les(cone_triangle(f)); }

}  // namespace chainlab
