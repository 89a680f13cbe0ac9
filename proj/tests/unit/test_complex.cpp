#include <doctest.h>

#include "chainlab/complex.hpp"
#include "chainlab/cone.hpp"
#include "chainlab/error.hpp"
#include "chainlab/homotopy.hpp"
#include "chainlab/random.hpp"
#include "helpers.hpp"

using namespace chainlab;
using namespace testkit;

namespace {

const CoefficientRing F3 = CoefficientRing::prime_field(3);

std::vector<CoefficientRing> rings() { return {ZZ, QQ, F3}; }

RandomProfile torsion_profile() {
  RandomProfile p;
  p.max_torsion_disks = 2;
  return p;
}

}  // namespace

TEST_CASE("validate flags the first degree with d^2 != 0") {
  CHECK(validate(disk(ZZ, 2, -1)).ok);
  ChainComplex bad(ZZ, 0, {1, 1, 1}, {{0, one_by_one(ZZ, 1)}, {1, one_by_one(ZZ, 1)}});
  auto report = validate(bad);
  CHECK_FALSE(report.ok);
  REQUIRE(report.degree.has_value());
  CHECK(*report.degree == 0);
  CHECK_THROWS_AS(require_valid(bad), ValidationError);
  CHECK(validate(ChainComplex(ZZ)).ok);
}

TEST_CASE("shape errors are reported at construction") {
  CHECK_THROWS_AS(ChainComplex(ZZ, 0, {1, 2}, {{0, one_by_one(ZZ, 1)}}), ShapeError);
  auto c = disk(ZZ, 2, 0);
  CHECK_THROWS_AS(ChainMap(c, c, {{0, mat(ZZ, {{1, 0}})}}), ShapeError);
}

TEST_CASE("degree maps are total") {
  auto c = disk(ZZ, 2, -1);
  CHECK(c.lo() == -1);
  CHECK(c.hi() == 0);
  CHECK(c.rank(5) == 0);
  CHECK(c.diff(7).rows() == 0);
  CHECK(c.diff(-2).rows() == 1);
  CHECK(c.diff(-2).cols() == 0);
  CHECK(ChainComplex(ZZ, -3, {0, 1, 0}) == sphere(ZZ, -2));
}

TEST_CASE("cohomology examples") {
  auto c = disk(ZZ, 2, -1);
  CHECK(cohomology(c, 0) == FgModule::cyclic(ZZ, 2));
  CHECK(cohomology(c, -1).is_zero());
  auto s = sphere(ZZ, 0);
  CHECK(cohomology(s, 0) == FgModule::free(ZZ, 1));
  for (int n : {-2, -1, 1, 2}) CHECK(cohomology(s, n).is_zero());
  auto iso = disk(ZZ, 1, 0);
  CHECK(cohomology(iso, 0).is_zero());
  CHECK(cohomology(iso, 1).is_zero());
  CHECK(cohomology_all(iso).empty());
  CHECK(is_acyclic(iso));
}

TEST_CASE("cohomology agrees with the determinantal oracle on random complexes") {
  for (const auto& ring : rings()) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      auto rc = random_complex(seed, ring, torsion_profile());
      REQUIRE(validate(rc.complex).ok);
      for (int n = rc.complex.lo() - 1; n <= rc.complex.hi() + 1; ++n) {
        FgModule h = cohomology(rc.complex, n);
        CHECK(h == oracle_cohomology(rc.complex, n));
        auto it = rc.ground_truth.find(n);
        CHECK(h == (it == rc.ground_truth.end() ? FgModule::zero(ring) : it->second));
      }
    }
  }
}

TEST_CASE("shift") {
  auto c = disk(ZZ, 2, -1);
  auto s = shift(c, 1);
  CHECK(s.lo() == -2);
  CHECK(s.hi() == -1);
  CHECK(s.diff(-2) == one_by_one(ZZ, -2));
  CHECK(shift(c, 0) == c);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto rc = random_complex(seed, ZZ, torsion_profile());
    for (int a : {-2, -1, 1, 3}) {
      for (int b : {-1, 2}) CHECK(shift(shift(rc.complex, a), b) == shift(rc.complex, a + b));
      auto sh = shift(rc.complex, a);
      CHECK(validate(sh).ok);
      for (int i = -5; i <= 5; ++i) CHECK(cohomology(sh, i) == cohomology(rc.complex, i + a));
    }
  }
}

TEST_CASE("biproduct") {
  auto a = disk(ZZ, 2, -1);
  auto zero_sum = biproduct(a, ChainComplex(ZZ));
  CHECK(zero_sum.sum == a);
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_cell_complex(rng, ZZ, torsion_profile());
    auto y = random_cell_complex(rng, ZZ, torsion_profile());
    auto bp = biproduct(x.complex, y.complex);
    CHECK(validate(bp.sum).ok);
    for (const auto* m : {&bp.in_a, &bp.in_b, &bp.pr_a, &bp.pr_b}) CHECK(validate(*m).ok);
    CHECK(bp.pr_a * bp.in_a == ChainMap::identity(x.complex));
    CHECK(bp.pr_b * bp.in_b == ChainMap::identity(y.complex));
    CHECK((bp.pr_b * bp.in_a).is_zero());
    CHECK(bp.in_a * bp.pr_a + bp.in_b * bp.pr_b == ChainMap::identity(bp.sum));
    for (int n = -3; n <= 3; ++n)
      CHECK(cohomology(bp.sum, n) == direct_sum(oracle_cohomology(x.complex, n), oracle_cohomology(y.complex, n)));
  }
  CHECK_THROWS_AS(biproduct(a, disk(QQ, 2, -1)), RingMismatch);
}

TEST_CASE("tensor product") {
  Rng rng(11);
  auto unit = sphere(ZZ, 0);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_cell_complex(rng, ZZ, torsion_profile()).complex;
    CHECK(tensor(x, unit) == x);
    CHECK(tensor(unit, x) == x);
  }

  auto t = tensor(disk(ZZ, 2, -1), disk(ZZ, 3, -1));
  CHECK(t.lo() == -2);
  CHECK(t.rank(-2) == 1);
  CHECK(t.rank(-1) == 2);
  CHECK(t.rank(0) == 1);
  // blocks in degree -1: (a^-1 ⊗ b^0, a^0 ⊗ b^-1); sign (-1)^{-1} on the second factor
  CHECK(t.diff(-2) == mat(ZZ, {{-3}, {2}}));
  CHECK(t.diff(-1) == mat(ZZ, {{2, 3}}));
  CHECK(validate(t).ok);
  CHECK(cohomology(t, 0) == FgModule::cyclic(ZZ, 1));
  CHECK(cohomology(t, -1).is_zero());

  for (int trial = 0; trial < 15; ++trial) {
    auto a = random_cell_complex(rng, ZZ, torsion_profile()).complex;
    auto b = random_cell_complex(rng, ZZ, torsion_profile()).complex;
    auto ab = tensor(a, b), ba = tensor(b, a);
    CHECK(validate(ab).ok);
    auto sw = tensor_swap(a, b);
    CHECK(validate(sw).ok);
    CHECK(tensor_swap(b, a) * sw == ChainMap::identity(ab));
    for (int n = ab.lo(); n <= ab.hi(); ++n) CHECK(cohomology(ab, n) == cohomology(ba, n));
  }
}

TEST_CASE("tensor of maps is functorial") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_cell_complex(rng, QQ, RandomProfile{});
    auto y = random_cell_complex(rng, QQ, RandomProfile{});
    auto z = random_cell_complex(rng, QQ, RandomProfile{});
    auto f = random_chain_map(rng, x, y), g = random_chain_map(rng, y, z);
    auto u = ChainMap::identity(z.complex);
    auto fu = tensor(f, u);
    CHECK(validate(fu).ok);
    CHECK(tensor(g, u) * fu == tensor(g * f, u));
  }
}

TEST_CASE("induced maps") {
  auto c = disk(ZZ, 2, -1);
  CHECK(induced_map(ChainMap::identity(c), 0) == ModuleMap::identity(cohomology(c, 0)));
  auto d = disk(ZZ, 1, -1);
  CHECK(induced_map(ChainMap::zero(c, d), 0).is_zero());

  // [Z -2-> Z] -> [Z -4-> Z] with components 1 in degree -1 and 2 in degree 0
  auto y = disk(ZZ, 4, -1);
  ChainMap f(c, y, {{-1, one_by_one(ZZ, 1)}, {0, one_by_one(ZZ, 2)}});
  REQUIRE(validate(f).ok);
  auto h0 = induced_map(f, 0);
  CHECK(h0.source() == FgModule::cyclic(ZZ, 2));
  CHECK(h0.target() == FgModule::cyclic(ZZ, 4));
  CHECK(h0.matrix() == one_by_one(ZZ, 2));
  CHECK_FALSE(is_quasi_iso(f));
}

TEST_CASE("induced maps respect composition and homotopy") {
  for (const auto& ring : rings()) {
    Rng rng(21);
    for (int trial = 0; trial < 12; ++trial) {
      auto x = random_cell_complex(rng, ring, torsion_profile());
      auto y = random_cell_complex(rng, ring, torsion_profile());
      auto z = random_cell_complex(rng, ring, torsion_profile());
      auto f = random_chain_map(rng, x, y), g = random_chain_map(rng, y, z);
      for (int n = -3; n <= 3; ++n) CHECK(induced_map(g * f, n) == induced_map(g, n) * induced_map(f, n));

      // perturb f by s d + d s for a random s
      std::map<int, ExactMatrix> s;
      for (int n = -3; n <= 3; ++n) {
        ExactMatrix m(ring, y.complex.rank(n - 1), x.complex.rank(n));
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) m.set(i, j, rng.uniform(-2, 2));
        s.emplace(n, m);
      }
      Homotopy zero_h(ChainMap::zero(x.complex, y.complex), ChainMap::zero(x.complex, y.complex), s);
      ChainMap g2 = f + zero_h.boundary();
      Homotopy h(g2, f, s);
      REQUIRE(validate(h).ok);
      for (int n = -3; n <= 3; ++n) CHECK(induced_map(f, n) == induced_map(g2, n));
    }
  }
}

TEST_CASE("quasi-isomorphisms") {
  auto c = disk(ZZ, 2, -1);
  CHECK(is_quasi_iso(ChainMap::identity(c)));
  CHECK(is_quasi_iso(ChainMap::zero(disk(ZZ, 1, 0), disk(ZZ, -1, 2))));
  for (const auto& ring : rings()) {
    Rng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
      auto x = random_cell_complex(rng, ring, torsion_profile());
      auto y = random_cell_complex(rng, ring, torsion_profile());
      auto f = random_chain_map(rng, x, y);
      CHECK(is_quasi_iso(f) == is_acyclic(cone(f).complex));
      auto q = random_quasi_iso(rng, ring, torsion_profile());
      CHECK(is_quasi_iso(q));
      CHECK(is_acyclic(cone(q).complex));
    }
  }
}

TEST_CASE("Euler characteristic over fields") {
  for (const auto& ring : {QQ, F3}) {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
      auto c = random_complex(seed, ring, RandomProfile{}).complex;
      long chi_ranks = 0, chi_h = 0;
      for (int n = c.lo(); n <= c.hi(); ++n) {
        long sign = (n % 2 == 0) ? 1 : -1;
        chi_ranks += sign * static_cast<long>(c.rank(n));
        chi_h += sign * static_cast<long>(cohomology(c, n).free_rank());
      }
      CHECK(chi_ranks == chi_h);
    }
  }
}

TEST_CASE("homotopy validation") {
  auto c = disk(ZZ, 1, 0);
  Homotopy good(ChainMap::identity(c), ChainMap::zero(c, c), {{1, one_by_one(ZZ, 1)}});
  CHECK(validate(good).ok);
  Homotopy bad(ChainMap::identity(c), ChainMap::zero(c, c), {{1, one_by_one(ZZ, 2)}});
  CHECK_FALSE(validate(bad).ok);
}
