#include "chainlab/tstruct.hpp"

#include <algorithm>

#include "chainlab/error.hpp"
#include "chainlab/linalg.hpp"

namespace chainlab {

namespace {

ExactMatrix id(const CoefficientRing& ring, std::size_t n) { return ExactMatrix::identity(ring, n); }

// Basis V of the source of d with ker d spanned by the last columns; the
// first r columns span a complement.
struct KernelSplit {
  ExactMatrix v, v_inv;
  std::size_t r;
};

KernelSplit kernel_split(const ExactMatrix& d) {
  SmithForm s = smith_normal_form(d);
  auto inv = inverse(s.v);
  if (!inv) throw Error("kernel_split: Smith form returned a singular transform");
  return {s.v, *inv, s.rank};
}

}  // namespace

Truncation truncate(const ChainComplex& c, int n, TruncationSide side) {
  const auto& ring = c.ring();
  if (c.is_zero()) return {c, ChainMap::identity(c)};
  KernelSplit ks = kernel_split(c.diff(n));
  const std::size_t rn = c.rank(n);

  if (side == TruncationSide::Below) {
    if (n < c.lo()) {
      ChainComplex zero(ring);
      return {zero, ChainMap::zero(zero, c)};
    }
    const int hi = std::min(n, c.hi());
    ExactMatrix k = ks.v.col_range(ks.r, rn - ks.r);
    std::vector<std::size_t> ranks;
    std::map<int, ExactMatrix> diffs, incl;
    for (int i = c.lo(); i <= hi; ++i) {
      ranks.push_back(i == n ? k.cols() : c.rank(i));
      incl.emplace(i, i == n ? k : id(ring, c.rank(i)));
    }
    for (int i = c.lo(); i < hi; ++i) {
      if (i == n - 1) {
        auto a = solve_matrix(k, c.diff(i));
        if (!a) throw Error("truncate: image of d does not lie in the kernel");
        diffs.emplace(i, *a);
      } else {
        diffs.emplace(i, c.diff(i));
      }
    }
    ChainComplex out(ring, c.lo(), ranks, diffs);
    return {out, ChainMap(out, c, incl)};
  }

  if (n > c.hi()) {
    ChainComplex zero(ring);
    return {zero, ChainMap::zero(c, zero)};
  }
  const int lo = std::max(n, c.lo());
  std::vector<std::size_t> ranks;
  std::map<int, ExactMatrix> diffs, proj;
  for (int i = lo; i <= c.hi(); ++i) {
    ranks.push_back(i == n ? ks.r : c.rank(i));
    proj.emplace(i, i == n ? ks.v_inv.row_range(0, ks.r) : id(ring, c.rank(i)));
    diffs.emplace(i, i == n ? c.diff(n) * ks.v.col_range(0, ks.r) : c.diff(i));
  }
  ChainComplex out(ring, lo, ranks, diffs);
  return {out, ChainMap(c, out, proj)};
}

TruncationTriangle truncation_triangle(const ChainComplex& c, int n) {
  const auto& ring = c.ring();
  Truncation below = truncate(c, n, TruncationSide::Below);
  const ChainMap& incl = below.comparison;
  std::map<int, ExactMatrix> complements;
  if (!c.is_zero()) {
    KernelSplit ks = kernel_split(c.diff(n));
    for (int i = c.lo(); i <= c.hi(); ++i) {
      if (i < n) continue;
      complements.emplace(i, i == n ? ks.v.col_range(0, ks.r) : id(ring, c.rank(i)));
    }
  }
  SesComparison cmp = ses_compare(incl, complements);
  Cone cn = cone(incl);
  ChainMap delta = cn.project * cmp.psi;
  Triangle t(incl, cmp.quotient_map, delta);

  std::map<int, ExactMatrix> k;
  for (int m = cn.complex.lo(); m <= cn.complex.hi() + 1; ++m)
    k.emplace(m, (cn.project.component(m - 1) * cmp.homotopy.component(m)).scaled(-1));
  Homotopy hk(delta * cmp.phi, cn.project, k);
  if (!validate(hk).ok || !(cmp.phi * cn.inject == cmp.quotient_map)) {
    throw Error("truncation_triangle: comparison data failed to verify");
  }
  return {t, cmp, ExactnessCertificate{cmp.phi, hk}};
}

namespace {

TStructureVerdict standard_from(const std::map<int, FgModule>& h, int lo, int hi) {
  TStructureVerdict v;
  for (int n = lo; n <= hi; ++n) {
    bool le = true, ge = true;
    for (const auto& [i, m] : h) {
      if (i > n) le = false;
      if (i < n) ge = false;
    }
    v.in_le[n] = le;
    v.in_ge[n] = ge;
  }
  v.heart = std::all_of(h.begin(), h.end(), [](const auto& kv) { return kv.first == 0; });
  return v;
}

struct TiltedAtZero {
  bool le, ge;
};

TiltedAtZero tilted_at_zero(const ChainComplex& c) {
  auto h = cohomology_all(c);
  auto at = [&](int i) {
    auto it = h.find(i);
    return it == h.end() ? FgModule::zero(c.ring()) : it->second;
  };
  bool std_le0 = std::all_of(h.begin(), h.end(), [](const auto& kv) { return kv.first <= 0; });
  bool std_ge_m1 = std::all_of(h.begin(), h.end(), [](const auto& kv) { return kv.first >= -1; });
  FgModule hm1 = at(-1);
  if (c.is_zero() || c.lo() >= -1) {
    // H^{-1} is a submodule of a free module here
    if (!is_torsion_free(hm1)) throw Error("tilted_t_verdict: torsion in the kernel of d^{-1}");
  }
  return {std_le0 && is_torsion(at(0)), std_ge_m1 && is_torsion_free(hm1)};
}

}  // namespace

TStructureVerdict standard_t_verdict(const ChainComplex& c, int n) { return standard_t_verdict(c, n, n); }

TStructureVerdict standard_t_verdict(const ChainComplex& c, int lo, int hi) {
  return standard_from(cohomology_all(c), lo, hi);
}

FgModule heart_H0(const ChainComplex& c) {
  Truncation below = truncate(c, 0, TruncationSide::Below);
  Truncation both = truncate(below.complex, -1, TruncationSide::Above);
  return cohomology(both.complex, 0);
}

bool is_torsion(const FgModule& m) { return m.free_rank() == 0; }
bool is_torsion_free(const FgModule& m) { return m.invariant_factors().empty(); }

TorsionDecomposition torsion_decompose(const FgModule& m) {
  const auto& ring = m.ring();
  const std::size_t t = m.torsion_count(), r = m.free_rank();
  FgModule tors(ring, 0, m.invariant_factors());
  FgModule free = FgModule::free(ring, r);
  ExactMatrix inc(ring, t + r, t), proj(ring, r, t + r);
  for (std::size_t i = 0; i < t; ++i) inc.set(i, i, 1);
  for (std::size_t j = 0; j < r; ++j) proj.set(j, t + j, 1);
  TorsionDecomposition out{tors, free, ModuleMap(tors, m, inc), ModuleMap(m, free, proj), ""};
  if (ring.is_field()) out.note = "every module over " + ring.name() + " is torsion-free";
  return out;
}

TStructureVerdict tilted_t_verdict(const ChainComplex& c) { return tilted_t_verdict(c, 0, 0); }

TStructureVerdict tilted_t_verdict(const ChainComplex& c, int lo, int hi) {
  if (c.ring().is_field()) throw Unsupported("the tilted t-structure needs integer coefficients");
  TStructureVerdict v;
  for (int n = lo; n <= hi; ++n) {
    auto z = tilted_at_zero(shift(c, n));
    v.in_le[n] = z.le;
    v.in_ge[n] = z.ge;
  }
  auto z = tilted_at_zero(c);
  v.heart = z.le && z.ge;
  return v;
}

}  // namespace chainlab
