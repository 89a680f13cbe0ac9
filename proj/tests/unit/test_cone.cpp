#include <doctest.h>

#include "chainlab/cone.hpp"
#include "chainlab/error.hpp"
#include "chainlab/linalg.hpp"
#include "chainlab/homotopy.hpp"
#include "chainlab/random.hpp"
#include "helpers.hpp"

using namespace chainlab;
using namespace testkit;

namespace {

const CoefficientRing F5 = CoefficientRing::prime_field(5);

ChainMap times(const ChainComplex& c, long k) { return ChainMap::scalar(c, Scalar(k)); }

RandomProfile torsion_profile() {
  RandomProfile p;
  p.max_torsion_disks = 2;
  return p;
}

}  // namespace

TEST_CASE("cone examples") {
  auto z = sphere(ZZ, 0);
  auto c = cone(times(z, 2));
  CHECK(c.complex == disk(ZZ, 2, -1));
  CHECK(cohomology(c.complex, 0) == FgModule::cyclic(ZZ, 2));
  CHECK((c.project * c.inject).is_zero());

  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_cell_complex(rng, ZZ, torsion_profile());
    CHECK(is_acyclic(cone(ChainMap::identity(x.complex)).complex));

    auto y = random_cell_complex(rng, ZZ, torsion_profile());
    auto zc = cone(ChainMap::zero(x.complex, y.complex)).complex;
    CHECK(zc == biproduct(shift(x.complex, 1), y.complex).sum);
  }
}

TEST_CASE("cone structure on random maps") {
  for (const auto& ring : {ZZ, QQ, F5}) {
    Rng rng(4);
    for (int trial = 0; trial < 15; ++trial) {
      auto x = random_cell_complex(rng, ring, torsion_profile());
      auto y = random_cell_complex(rng, ring, torsion_profile());
      auto f = random_chain_map(rng, x, y);
      auto c = cone(f);
      CHECK(validate(c.complex).ok);
      CHECK(validate(c.inject).ok);
      CHECK(validate(c.project).ok);
      CHECK((c.project * c.inject).is_zero());
      for (int n = -4; n <= 4; ++n) CHECK(c.complex.rank(n) == x.complex.rank(n + 1) + y.complex.rank(n));
      CHECK(cofiber_les(f).all_exact());
    }
  }
}

TEST_CASE("cylinder") {
  auto z = sphere(ZZ, 0);
  auto cyl = cylinder(ChainMap::identity(z));
  CHECK(cyl.complex.rank(-1) == 1);
  CHECK(cyl.complex.rank(0) == 2);
  CHECK(cyl.complex.diff(-1) == mat(ZZ, {{-1}, {1}}));
  CHECK(cohomology(cyl.complex, 0) == FgModule::free(ZZ, 1));
  CHECK(cohomology(cyl.complex, -1).is_zero());

  Rng rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    auto x = random_cell_complex(rng, ZZ, torsion_profile());
    auto y = random_cell_complex(rng, ZZ, torsion_profile());
    auto f = random_chain_map(rng, x, y);
    auto c = cylinder(f);
    CHECK(validate(c.complex).ok);
    for (const auto* m : {&c.in_y, &c.out_y, &c.in_x, &c.to_cone}) CHECK(validate(*m).ok);
    CHECK(c.out_y * c.in_y == ChainMap::identity(y.complex));
    CHECK(validate(c.homotopy).ok);
    CHECK(c.homotopy.from_map() == ChainMap::identity(c.complex));
    CHECK(c.homotopy.to_map() == c.in_y * c.out_y);
    CHECK(c.out_y * c.in_x == f);
    // X -> Cyl -> Cone is degreewise split exact
    CHECK((c.to_cone * c.in_x).is_zero());
    auto cn = cone(f);
    CHECK(c.to_cone.target() == cn.complex);
    for (int n = -4; n <= 4; ++n) {
      CHECK(c.complex.rank(n) == x.complex.rank(n) + cn.complex.rank(n));
      CHECK(rank(c.in_x.component(n)) == x.complex.rank(n));
      CHECK(rank(c.to_cone.component(n)) == cn.complex.rank(n));
    }
  }
}

TEST_CASE("ses_compare") {
  auto z = sphere(ZZ, 0);
  auto z2 = sphere(ZZ, 0, 2);
  ChainMap f(z, z2, {{0, mat(ZZ, {{1}, {0}})}});
  auto cmp = ses_compare(f, {{0, mat(ZZ, {{0}, {1}})}});
  CHECK(cmp.quotient == z);
  CHECK(cmp.phi * cmp.psi == ChainMap::identity(cmp.quotient));
  // Cone(f) keeps X in degree -1, so psi∘phi is only homotopic to the identity
  CHECK(cmp.homotopy.from_map() == ChainMap::identity(cone(f).complex));
  CHECK(validate(cmp.homotopy).ok);
  CHECK(cmp.psi * cmp.phi == cmp.homotopy.to_map());

  CHECK_THROWS_AS(ses_compare(times(z, 2), {}), ValidationError);
  CHECK_THROWS_AS(ses_compare(f, {{0, mat(ZZ, {{0}, {2}})}}), ValidationError);

  for (const auto& ring : {ZZ, QQ, F5}) {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
      auto sm = random_split_mono(rng, ring, torsion_profile());
      REQUIRE(validate(sm.f).ok);
      auto r = ses_compare(sm.f, sm.complements);
      CHECK(validate(r.quotient).ok);
      CHECK(validate(r.phi).ok);
      CHECK(validate(r.psi).ok);
      CHECK(validate(r.quotient_map).ok);
      CHECK(r.phi * r.psi == ChainMap::identity(r.quotient));
      CHECK(validate(r.homotopy).ok);
      CHECK(r.homotopy.to_map() == r.psi * r.phi);
      CHECK(is_quasi_iso(r.phi));
      CHECK(is_quasi_iso(r.psi));
      CHECK((r.quotient_map * sm.f).is_zero());
    }
  }
}

TEST_CASE("rotation") {
  auto z = sphere(ZZ, 0);
  auto f = times(z, 2);
  auto t = cone_triangle(f);
  auto r = rotate(t);
  CHECK(r.h() == -shift(f, 1));
  CHECK(r.f() == t.g());
  CHECK(unrotate(r) == t);
  CHECK(rotate(unrotate(t)) == t);

  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_cell_complex(rng, ZZ, torsion_profile());
    auto y = random_cell_complex(rng, ZZ, torsion_profile());
    auto tri = cone_triangle(random_chain_map(rng, x, y));
    auto turned = tri;
    for (int i = 0; i < 3; ++i) turned = rotate(turned);
    CHECK(turned.f() == -shift(tri.f(), 1));
    CHECK(turned.g() == -shift(tri.g(), 1));
    CHECK(turned.h() == -shift(tri.h(), 1));
    for (int i = 0; i < 3; ++i) turned = rotate(turned);
    CHECK(turned == shift(tri, 2));
    CHECK(unrotate(rotate(tri)) == tri);
    CHECK(triangle_les(rotate(tri)).all_exact());
  }

  CHECK_THROWS_AS(Triangle(f, f, f), ShapeError);
}

TEST_CASE("cofiber long exact sequence") {
  auto z = sphere(ZZ, 0);
  auto les = cofiber_les(times(z, 2));
  CHECK(les.all_exact());
  bool saw_times_two = false, saw_onto_z2 = false;
  for (const auto& m : les.maps) {
    if (m.source() == FgModule::free(ZZ, 1) && m.target() == FgModule::free(ZZ, 1)) {
      saw_times_two = true;
      CHECK(m.matrix() == one_by_one(ZZ, 2));
    }
    if (m.target() == FgModule::cyclic(ZZ, 2)) {
      saw_onto_z2 = true;
      CHECK(module_map_analysis(m).cokernel.is_zero());
    }
  }
  CHECK(saw_times_two);
  CHECK(saw_onto_z2);

  auto id_les = cofiber_les(ChainMap::identity(disk(ZZ, 3, 0)));
  CHECK(id_les.all_exact());
  for (const auto& m : id_les.maps)
    if (m.source() == m.target() && !m.source().is_zero()) CHECK(module_map_analysis(m).is_iso);

  auto zero = cofiber_les(ChainMap::zero(z, z));
  CHECK(zero.all_exact());
  CHECK(cohomology(cone(ChainMap::zero(z, z)).complex, 0) == FgModule::free(ZZ, 1));
  CHECK(cohomology(cone(ChainMap::zero(z, z)).complex, -1) == FgModule::free(ZZ, 1));
}

TEST_CASE("make_les flags inexact joints") {
  auto m = FgModule::free(ZZ, 1);
  ModuleMap two(m, m, one_by_one(ZZ, 2));
  auto les = make_les({two, two}, {"a", "b"});
  REQUIRE(les.exact.size() == 1);
  CHECK_FALSE(les.exact[0]);
  CHECK_FALSE(les.all_exact());
}

TEST_CASE("cone is functorial under chain equivalences") {
  Rng rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    auto x = random_cell_complex(rng, QQ, RandomProfile{});
    auto y = random_cell_complex(rng, QQ, RandomProfile{});
    auto f = random_chain_map(rng, x, y);
    // square f -> in_y ∘ f with vertical maps id and in_y : Y -> Cyl(f)
    auto cyl = cylinder(f);
    auto f2 = cyl.in_y * f;
    auto c1 = cone(f), c2 = cone(f2);
    std::map<int, ExactMatrix> block;
    for (int n = -4; n <= 4; ++n)
      block.emplace(n, block_diagonal(ExactMatrix::identity(QQ, x.complex.rank(n + 1)), cyl.in_y.component(n)));
    ChainMap induced(c1.complex, c2.complex, block);
    REQUIRE(validate(induced).ok);
    CHECK(find_homotopy_inverse(induced).has_value());
  }
}
