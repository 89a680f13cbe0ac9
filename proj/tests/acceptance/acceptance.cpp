// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance                 run everything, exit 1 if anything fails
//   acceptance --criterion N   run one criterion

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "chainlab/axioms.hpp"
#include "chainlab/derived.hpp"
#include "chainlab/tstruct.hpp"
#include "helpers.hpp"

using namespace chainlab;
using namespace testkit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << s << " s";
  return out.str();
}

long euclid(long a, long b) {
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

long max_abs_entry(const ExactMatrix& m) {
  long best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) best = std::max(best, std::labs(m.at(i, j).get_num().get_si()));
  return best;
}

long max_abs_entry(const ChainComplex& c) {
  long best = 0;
  for (int n = c.lo(); n < c.hi(); ++n) best = std::max(best, max_abs_entry(c.diff(n)));
  return best;
}

long max_abs_entry(const ChainMap& f) {
  long best = 0;
  for (int n = f.lo(); n <= f.hi(); ++n) best = std::max(best, max_abs_entry(f.component(n)));
  return best;
}

// 1. H^0(cone(x k)) = Z/k, everything else zero, for k = 1..50, under 1 s.
Outcome cone_formula() {
  auto t0 = Clock::now();
  int ok = 0;
  for (long k = 1; k <= 50; ++k) {
    auto c = cone(ChainMap::scalar(sphere(ZZ, 0), Scalar(k))).complex;
    bool good = cohomology(c, 0) == FgModule(ZZ, 0, k == 1 ? std::vector<mpz_class>{} : std::vector<mpz_class>{k}) &&
                oracle_cohomology(c, 0) == cohomology(c, 0);
    for (int n = -3; n <= 3; ++n)
      if (n != 0) good = good && cohomology(c, n).is_zero();
    ok += good;
  }
  double s = seconds_since(t0);
  return {ok == 50 && s < 1.0, std::to_string(ok) + "/50 exact, " + secs(s) + " (limit 1 s)"};
}

// 2. cofiber LES exact on 500 random maps over Z, entries in [-5, 5], ranks <= 4, width <= 5, under 60 s.
Outcome les_exactness() {
  auto t0 = Clock::now();
  RandomProfile p;
  p.lo = -2;
  p.hi = 2;
  p.max_rank = 4;
  p.entry_bound = 5;
  p.max_torsion_disks = 1;
  Rng rng(20);
  int ok = 0, resampled = 0;
  for (int i = 0; i < 500; ++i) {
    auto x = random_cell_complex(rng, ZZ, p);
    auto y = random_cell_complex(rng, ZZ, p);
    auto f = random_chain_map(rng, x, y, 1);
    while (max_abs_entry(f) > 5 || max_abs_entry(x.complex) > 5 || max_abs_entry(y.complex) > 5) {
      ++resampled;
      x = random_cell_complex(rng, ZZ, p);
      y = random_cell_complex(rng, ZZ, p);
      f = random_chain_map(rng, x, y, 1);
    }
    auto les = cofiber_les(f);
    auto c = cone(f).complex;
    bool good = les.all_exact();
    for (int n = c.lo(); n <= c.hi(); ++n) good = good && oracle_cohomology(c, n) == cohomology(c, n);
    ok += good;
  }
  double s = seconds_since(t0);
  return {ok == 500 && s < 60.0, std::to_string(ok) + "/500 exact (" + std::to_string(resampled) +
                                      " draws redrawn to keep entries in [-5, 5]), " + secs(s) + " (limit 60 s)"};
}

// 3. Split monos: phi∘psi = id exactly, psi∘phi ≃ id with a validated homotopy.
Outcome split_monos() {
  Rng rng(30);
  int ok = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& ring = i % 2 ? QQ : ZZ;
    auto sm = random_split_mono(rng, ring, RandomProfile{});
    auto cmp = ses_compare(sm.f, sm.complements);
    auto c = cone(sm.f).complex;
    bool good = cmp.phi * cmp.psi == ChainMap::identity(cmp.quotient) && validate(cmp.homotopy).ok &&
                cmp.homotopy.from_map() == ChainMap::identity(c) && cmp.homotopy.to_map() == cmp.psi * cmp.phi;
    ok += good;
  }
  return {ok == 200, std::to_string(ok) + "/200 (Z and Q alternating)"};
}

// 4. tor_1 and ext^1 of Z/m, Z/n are Z/gcd for 1 <= m, n <= 12, under 5 s.
Outcome tor_ext_tables() {
  auto t0 = Clock::now();
  int ok = 0;
  for (long m = 1; m <= 12; ++m)
    for (long n = 1; n <= 12; ++n) {
      const long g = euclid(m, n);
      FgModule expected(ZZ, 0, g == 1 ? std::vector<mpz_class>{} : std::vector<mpz_class>{g});
      auto zm = FgModule(ZZ, 0, m == 1 ? std::vector<mpz_class>{} : std::vector<mpz_class>{m});
      auto zn = FgModule(ZZ, 0, n == 1 ? std::vector<mpz_class>{} : std::vector<mpz_class>{n});
      ok += tor(zm, zn, 1) == expected && ext(zm, zn, 1) == expected;
    }
  double s = seconds_since(t0);
  return {ok == 144 && s < 5.0, std::to_string(ok) + "/144 pairs, " + secs(s) + " (limit 5 s)"};
}

// 5. One-sided and two-sided resolutions give the same derived tensor cohomology.
Outcome resolution_independence() {
  int ok = 0;
  for (long m = 1; m <= 12; ++m)
    for (long n = 1; n <= 12; ++n) {
      auto zm = FgModule(ZZ, 0, m == 1 ? std::vector<mpz_class>{} : std::vector<mpz_class>{m});
      auto zn = FgModule(ZZ, 0, n == 1 ? std::vector<mpz_class>{} : std::vector<mpz_class>{n});
      auto one = derived_tensor_one_sided(zm, zn);
      auto two = derived_tensor(zm, zn);
      bool good = true;
      for (int k = -3; k <= 1; ++k) good = good && cohomology(one, k) == cohomology(two, k);
      ok += good;
    }
  return {ok == 144, std::to_string(ok) + "/144 pairs, degrees -3..1"};
}

// 6. Quasi-isomorphisms over Q and F_2 invert up to homotopy; the integer
// instance is expected by the criterion to have no inverse.
Outcome field_equivalence() {
  int ok = 0;
  for (const auto& ring : {QQ, CoefficientRing::prime_field(2)}) {
    Rng rng(60);
    for (int i = 0; i < 300; ++i) {
      auto f = random_quasi_iso(rng, ring, RandomProfile{});
      auto inv = find_homotopy_inverse(f);
      bool good = is_quasi_iso(f) && inv && validate(inv->g).ok && validate(inv->left).ok &&
                  validate(inv->right).ok && inv->left.from_map() == inv->g * f &&
                  inv->left.to_map() == ChainMap::identity(f.source()) &&
                  inv->right.from_map() == f * inv->g && inv->right.to_map() == ChainMap::identity(f.target());
      ok += good;
    }
  }
  // x2 on the resolution [Z -3-> Z] of Z/3: a quasi-isomorphism since 2 is a unit mod 3.
  auto p = disk(ZZ, 3, -1);
  auto twice = ChainMap::scalar(p, Scalar(2));
  bool qi = is_quasi_iso(twice);
  bool none = !find_homotopy_inverse(twice).has_value();
  std::string detail = "fields " + std::to_string(ok) + "/600 inverted with validated witnesses; Z instance: is_quasi_iso " +
                       (qi ? "true" : "false") + ", homotopy inverse " + (none ? "none" : "FOUND") +
                       (none ? "" : " (criterion expects none; a quasi-isomorphism of bounded free complexes always has one)");
  return {ok == 600 && qi && none, detail};
}

// 7. verify-axioms over F_2, F_5 and Q, 200 instances each.
Outcome axioms() {
  std::string detail;
  bool pass = true;
  for (const auto& ring : {CoefficientRing::prime_field(2), CoefficientRing::prime_field(5), QQ}) {
    auto r = verify_axioms(7, ring, 200);
    std::size_t passed = 0, total = 0;
    for (const auto& a : r.axioms) {
      passed += a.passed;
      total += a.passed + a.failed;
    }
    pass = pass && r.all_passed();
    detail += (detail.empty() ? "" : ", ") + ring.name() + " " + std::to_string(passed) + "/" + std::to_string(total);
  }
  return {pass, detail + " checks (TR1-TR4 with braid squares, Hom exactness)"};
}

// 8. Truncation triangles, standard heart, three tilted examples.
Outcome t_structures() {
  RandomProfile p;
  p.max_torsion_disks = 2;
  int tri = 0, heart = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto c = random_complex(seed, ZZ, p).complex;
    const int n = static_cast<int>(seed % 5) - 2;
    auto t = truncation_triangle(c, n);
    bool good = validate(t.certificate.w).ok && validate(t.certificate.k).ok &&
                t.certificate.w * cone(t.triangle.f()).inject == t.triangle.g() && is_acyclic(cone(t.certificate.w).complex) &&
                triangle_les(t.triangle).all_exact();
    tri += good;

    bool only_zero = true;
    for (int i = -4; i <= 4; ++i)
      if (i != 0 && !oracle_cohomology(c, i).is_zero()) only_zero = false;
    heart += standard_t_verdict(c, 0).heart == only_zero;
  }
  bool tilted = tilted_t_verdict(disk(ZZ, 2, -1)).heart && !tilted_t_verdict(sphere(ZZ, 0)).heart &&
                tilted_t_verdict(sphere(ZZ, -1)).heart;
  return {tri == 200 && heart == 200 && tilted, "triangles " + std::to_string(tri) + "/200, heart " +
                                                    std::to_string(heart) + "/200, tilted examples " +
                                                    (tilted ? "3/3" : "mismatch")};
}

// 9. Hom_K(X, Y) = 0 for X in T^{<=0}, Y in T^{>=1} over F_2.
Outcome orthogonality() {
  const auto f2 = CoefficientRing::prime_field(2);
  Rng rng(90);
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    auto x = truncate(random_cell_complex(rng, f2, RandomProfile{}).complex, 0, TruncationSide::Below).complex;
    auto y = truncate(random_cell_complex(rng, f2, RandomProfile{}).complex, 0, TruncationSide::Above).complex;
    // over a field Hom_K(X, Y) = ⊕ Hom(H^n X, H^n Y)
    long expected = 0;
    for (int n = -4; n <= 4; ++n)
      expected += static_cast<long>(oracle_cohomology(x, n).free_rank() * oracle_cohomology(y, n).free_rank());
    auto h = hom_in_K(x, y);
    ok += h.is_zero() && expected == 0;
  }
  return {ok == 100, std::to_string(ok) + "/100 pairs"};
}

// 10. Generated complexes have their declared cohomology.
Outcome generator() {
  RandomProfile p;
  p.max_torsion_disks = 2;
  const CoefficientRing rings[] = {ZZ, ZZ, QQ, CoefficientRing::prime_field(2), CoefficientRing::prime_field(5)};
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto& ring = rings[seed % 5];
    RandomProfile q = p;
    if (ring.is_field()) q.max_torsion_disks = 0;
    auto rc = random_complex(seed, ring, q);
    bool good = true;
    for (int n = q.lo - 1; n <= q.hi + 1; ++n) {
      auto it = rc.ground_truth.find(n);
      FgModule truth = it == rc.ground_truth.end() ? FgModule::zero(ring) : it->second;
      good = good && cohomology(rc.complex, n) == truth && oracle_cohomology(rc.complex, n) == truth;
    }
    ok += good;
  }
  return {ok == 1000, std::to_string(ok) + "/1000 (Z, Q, F2, F5), library and determinantal oracle"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "cone formula", cone_formula},
      {2, "cofiber LES exactness", les_exactness},
      {3, "split mono comparison", split_monos},
      {4, "Tor/Ext tables", tor_ext_tables},
      {5, "resolution independence", resolution_independence},
      {6, "quasi-iso vs homotopy equivalence", field_equivalence},
      {7, "triangulated axioms", axioms},
      {8, "t-structures", t_structures},
      {9, "t1 orthogonality over F2", orthogonality},
      {10, "generator ground truth", generator},
  };
  int only = 0;
  if (argc == 3 && std::string(argv[1]) == "--criterion") only = std::atoi(argv[2]);
  else if (argc != 1) {
    std::cerr << "usage: acceptance [--criterion N]\n";
    return 2;
  }
  bool all_pass = true, ran = false;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    ran = true;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << o.detail << std::endl;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
