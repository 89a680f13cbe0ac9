#include <doctest.h>

#include "chainlab/error.hpp"
#include "chainlab/random.hpp"
#include "chainlab/tstruct.hpp"
#include "helpers.hpp"

using namespace chainlab;
using namespace testkit;

namespace {

RandomProfile torsion_profile() {
  RandomProfile p;
  p.max_torsion_disks = 2;
  return p;
}

FgModule h_or_zero(const std::map<int, FgModule>& h, int n, const CoefficientRing& ring) {
  auto it = h.find(n);
  return it == h.end() ? FgModule::zero(ring) : it->second;
}

}  // namespace

TEST_CASE("truncation examples") {
  auto split = ChainComplex(ZZ, 0, {1, 1});
  auto below = truncate(split, 0, TruncationSide::Below);
  CHECK(below.complex == sphere(ZZ, 0));
  CHECK(validate(below.comparison).ok);
  auto above = truncate(split, 0, TruncationSide::Above);
  CHECK(above.complex == sphere(ZZ, 1));
  CHECK(validate(above.comparison).ok);

  CHECK(truncate(disk(ZZ, 2, -1), -1, TruncationSide::Below).complex.is_zero());
  auto c = disk(ZZ, 2, -1);
  CHECK(truncate(c, 5, TruncationSide::Below).complex == c);
  CHECK(truncate(c, -5, TruncationSide::Above).complex == c);
  CHECK(truncate(c, -5, TruncationSide::Below).complex.is_zero());
  CHECK(truncate(c, 5, TruncationSide::Above).complex.is_zero());
}

TEST_CASE("truncations keep the right cohomology") {
  for (const auto& ring : {ZZ, QQ, CoefficientRing::prime_field(3)}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      auto c = random_complex(seed, ring, torsion_profile()).complex;
      for (int n = -3; n <= 3; ++n) {
        auto below = truncate(c, n, TruncationSide::Below);
        auto above = truncate(c, n, TruncationSide::Above);
        CHECK(validate(below.complex).ok);
        CHECK(validate(above.complex).ok);
        CHECK(validate(below.comparison).ok);
        CHECK(validate(above.comparison).ok);
        for (int i = -4; i <= 4; ++i) {
          auto h = oracle_cohomology(c, i);
          CHECK(cohomology(below.complex, i) == (i <= n ? h : FgModule::zero(ring)));
          CHECK(cohomology(above.complex, i) == (i > n ? h : FgModule::zero(ring)));
          if (i <= n) CHECK(module_map_analysis(induced_map(below.comparison, i)).is_iso);
          if (i > n) CHECK(module_map_analysis(induced_map(above.comparison, i)).is_iso);
        }
        CHECK((above.comparison * below.comparison).is_zero());
        CHECK(standard_t_verdict(below.complex, n).in_le.at(n));
        CHECK(standard_t_verdict(above.complex, n + 1).in_ge.at(n + 1));
      }
    }
  }
}

TEST_CASE("truncation triangles") {
  auto split = ChainComplex(ZZ, 0, {1, 1});
  auto tt = truncation_triangle(split, 0);
  CHECK(tt.triangle.x() == sphere(ZZ, 0));
  CHECK(tt.triangle.z() == sphere(ZZ, 1));
  auto cn = cone(tt.triangle.f());
  CHECK(cohomology(cn.complex, 1) == FgModule::free(ZZ, 1));
  CHECK(cohomology(cn.complex, -1).is_zero());
  CHECK(is_quasi_iso(tt.certificate.w));
  // Z(deg 1) -> Z(deg 0)[1] lives in disjoint degrees: the triangle splits
  CHECK(tt.triangle.h().is_zero());
  CHECK(exactness_verdict(tt.triangle).verdict == Verdict::Certified);

  auto c = disk(ZZ, 2, -1);
  auto low = truncation_triangle(c, -10);
  CHECK(low.triangle.x().is_zero());
  CHECK(low.triangle.g() == ChainMap::identity(c));
  auto high = truncation_triangle(c, 10);
  CHECK(high.triangle.f() == ChainMap::identity(c));
  CHECK(high.triangle.z().is_zero());

  for (const auto& ring : {ZZ, QQ}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto x = random_complex(seed, ring, torsion_profile()).complex;
      for (int n = -2; n <= 2; ++n) {
        auto t = truncation_triangle(x, n);
        CHECK(validate(t.certificate.w).ok);
        CHECK(validate(t.certificate.k).ok);
        CHECK(t.certificate.w * cone(t.triangle.f()).inject == t.triangle.g());
        CHECK(is_quasi_iso(t.certificate.w));
        CHECK(triangle_les(t.triangle).all_exact());
        auto above = truncate(x, n, TruncationSide::Above);
        CHECK(t.triangle.z() == above.complex);
        CHECK(t.triangle.g() == above.comparison);
        CHECK(standard_t_verdict(t.triangle.x(), n).in_le.at(n));
        CHECK(standard_t_verdict(t.triangle.z(), n + 1).in_ge.at(n + 1));
      }
    }
  }
}

TEST_CASE("standard t-structure verdicts") {
  CHECK(standard_t_verdict(sphere(ZZ, 0), 0).heart);
  CHECK(standard_t_verdict(disk(ZZ, 2, -1), 0).heart);
  auto shifted = sphere(ZZ, 1);
  auto v = standard_t_verdict(shifted, 1);
  CHECK(v.in_ge.at(1));
  CHECK_FALSE(v.heart);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto c = random_complex(seed, ZZ, torsion_profile());
    auto verdict = standard_t_verdict(c.complex, -4, 4);
    for (int n = -4; n < 4; ++n) {
      if (verdict.in_le.at(n)) CHECK(verdict.in_le.at(n + 1));
      if (verdict.in_ge.at(n + 1)) CHECK(verdict.in_ge.at(n));
    }
    bool only_zero = true;
    for (const auto& [n, m] : c.ground_truth) only_zero = only_zero && n == 0;
    CHECK(verdict.heart == only_zero);
  }
}

TEST_CASE("t1 orthogonality over a field") {
  Rng rng(70);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_cell_complex(rng, QQ, RandomProfile{}).complex;
    auto y = random_cell_complex(rng, QQ, RandomProfile{}).complex;
    auto xl = truncate(x, 0, TruncationSide::Below).complex;
    auto yg = truncate(y, 0, TruncationSide::Above).complex;
    CHECK(hom_in_K(xl, yg).is_zero());
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("heart H0") {
  CHECK(heart_H0(ChainComplex(ZZ)).is_zero());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto c = random_complex(seed, ZZ, torsion_profile());
    CHECK(heart_H0(c.complex) == h_or_zero(c.ground_truth, 0, ZZ));
  }
  Rng rng(71);
  for (int trial = 0; trial < 15; ++trial) {
    auto x = random_cell_complex(rng, ZZ, torsion_profile());
    auto y = random_cell_complex(rng, ZZ, torsion_profile());
    auto t = cone_triangle(random_chain_map(rng, x, y));
    auto hx = induced_map(t.f(), 0), hy = induced_map(t.g(), 0);
    CHECK(heart_H0(t.x()) == hx.source());
    CHECK(heart_H0(t.z()) == hy.target());
    CHECK(is_exact_at(hx, hy));
  }
}

TEST_CASE("torsion decomposition") {
  auto m = FgModule(ZZ, 1, {4});
  auto d = torsion_decompose(m);
  CHECK(d.torsion == FgModule::cyclic(ZZ, 4));
  CHECK(d.free == FgModule::free(ZZ, 1));
  CHECK((d.projection * d.inclusion).is_zero());
  CHECK(is_exact_at(d.inclusion, d.projection));
  CHECK(module_map_analysis(d.inclusion).kernel.is_zero());
  CHECK(module_map_analysis(d.projection).cokernel.is_zero());

  auto tf = torsion_decompose(FgModule::free(ZZ, 3));
  CHECK(tf.torsion.is_zero());
  CHECK(tf.free == FgModule::free(ZZ, 3));
  auto tt = torsion_decompose(FgModule(ZZ, 0, {2, 6}));
  CHECK(tt.torsion == FgModule(ZZ, 0, {2, 6}));
  CHECK(tt.free.is_zero());

  auto q = torsion_decompose(FgModule::free(QQ, 2));
  CHECK(q.torsion.is_zero());
  CHECK_FALSE(q.note.empty());

  // Hom(T, F) = 0
  for (long a = 2; a <= 12; ++a)
    for (std::size_t r = 1; r <= 2; ++r) CHECK(hom_module(FgModule::cyclic(ZZ, a), FgModule::free(ZZ, r)).is_zero());
}

TEST_CASE("tilted t-structure") {
  CHECK(tilted_t_verdict(disk(ZZ, 2, -1)).heart);
  CHECK_FALSE(tilted_t_verdict(sphere(ZZ, 0)).heart);
  CHECK(tilted_t_verdict(sphere(ZZ, -1)).heart);
  CHECK_FALSE(tilted_t_verdict(shift(disk(ZZ, 2, -1), 1)).heart);
  CHECK_THROWS_AS(tilted_t_verdict(sphere(QQ, 0)), Unsupported);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto c = random_complex(seed, ZZ, torsion_profile()).complex;
    auto v = tilted_t_verdict(c, -4, 4);
    for (int n = -4; n < 4; ++n) {
      if (v.in_le.at(n)) CHECK(v.in_le.at(n + 1));
      if (v.in_ge.at(n + 1)) CHECK(v.in_ge.at(n));
    }
    // D'^{≤0} sits between D^{≤-1} and D^{≤0}
    auto s = standard_t_verdict(c, -1, 0);
    if (s.in_le.at(-1)) CHECK(v.in_le.at(0));
    if (v.in_le.at(0)) CHECK(s.in_le.at(0));
    auto h = cohomology_all(c);
    bool heart = true;
    for (const auto& [i, m] : h) {
      if (i != 0 && i != -1) heart = false;
      if (i == 0 && !is_torsion(m)) heart = false;
      if (i == -1 && !is_torsion_free(m)) heart = false;
    }
    CHECK(v.heart == heart);
  }
}
