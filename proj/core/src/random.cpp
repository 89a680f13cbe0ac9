#include "chainlab/random.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "chainlab/error.hpp"

namespace chainlab {

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

namespace {

ExactMatrix id(const CoefficientRing& ring, std::size_t n) { return ExactMatrix::identity(ring, n); }

bool within(const ExactMatrix& m, long bound) {
  if (m.ring().kind() == RingKind::PrimeField) return true;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (abs(m.at(i, j)) > bound) return false;
  return true;
}

struct Conjugated {
  ChainComplex complex;
  std::map<int, ExactMatrix> p, p_inv;
};

// Random change of basis by elementary operations; entries of the new
// differentials stay within `bound` (operations that would break it are skipped).
Conjugated conjugate_complex(Rng& rng, const ChainComplex& c, long bound) {
  const auto& ring = c.ring();
  Conjugated out{c, {}, {}};
  if (c.is_zero()) return out;
  std::map<int, ExactMatrix> d;
  std::vector<int> degrees;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    out.p.emplace(n, id(ring, c.rank(n)));
    out.p_inv.emplace(n, id(ring, c.rank(n)));
    if (c.rank(n) > 0) degrees.push_back(n);
  }
  for (int n = c.lo() - 1; n <= c.hi(); ++n) d.emplace(n, c.diff(n));

  const std::size_t steps = 4 * c.total_rank();
  for (std::size_t step = 0; step < steps; ++step) {
    int n = degrees[rng.index(degrees.size())];
    const std::size_t r = c.rank(n);
    ExactMatrix e = id(ring, r), e_inv = id(ring, r);
    const long kind = rng.uniform(0, 3);
    if (r >= 2 && kind <= 1) {
      std::size_t i = rng.index(r), j = rng.index(r - 1);
      if (j >= i) ++j;
      long coeff = rng.uniform(1, 2) * (rng.coin() ? 1 : -1);
      e.set(i, j, coeff);
      e_inv.set(i, j, -coeff);
    } else if (r >= 2 && kind == 2) {
      std::size_t i = rng.index(r), j = rng.index(r - 1);
      if (j >= i) ++j;
      e.set(i, i, 0);
      e.set(j, j, 0);
      e.set(i, j, 1);
      e.set(j, i, 1);
      e_inv = e;
    } else {
      std::size_t i = rng.index(r);
      e.set(i, i, -1);
      e_inv = e;
    }
    ExactMatrix dn = d.at(n) * e_inv;
    ExactMatrix dprev = e * d.at(n - 1);
    if (!within(dn, bound) || !within(dprev, bound)) continue;
    d.insert_or_assign(n, dn);
    d.insert_or_assign(n - 1, dprev);
    out.p.insert_or_assign(n, e * out.p.at(n));
    out.p_inv.insert_or_assign(n, out.p_inv.at(n) * e_inv);
  }
  std::vector<std::size_t> ranks;
  for (int n = c.lo(); n <= c.hi(); ++n) ranks.push_back(c.rank(n));
  d.erase(c.lo() - 1);
  out.complex = ChainComplex(ring, c.lo(), ranks, d);
  return out;
}

bool is_unit_scalar(const CoefficientRing& ring, const Scalar& k) { return ring.is_unit(k); }

}  // namespace

ExactMatrix CellComplex::basis_at(int n) const {
  auto it = basis.find(n);
  return it != basis.end() ? it->second : id(ring, complex.rank(n));
}

ExactMatrix CellComplex::basis_inv_at(int n) const {
  auto it = basis_inv.find(n);
  return it != basis_inv.end() ? it->second : id(ring, complex.rank(n));
}

std::map<int, FgModule> CellComplex::ground_truth() const {
  std::map<int, std::size_t> free;
  std::map<int, std::vector<mpz_class>> orders;
  for (const auto& cell : cells) {
    if (cell.sphere) {
      ++free[cell.degree];
    } else if (!ring.is_unit(cell.k)) {
      orders[cell.degree + 1].push_back(abs(cell.k.get_num()));
    }
  }
  std::map<int, FgModule> out;
  std::set<int> degrees;
  for (const auto& [n, r] : free) degrees.insert(n);
  for (const auto& [n, o] : orders) degrees.insert(n);
  for (int n : degrees) {
    FgModule m = FgModule::from_orders(ring, free[n], orders[n]);
    if (!m.is_zero()) out.emplace(n, m);
  }
  return out;
}

CellComplex make_cell_complex(const CoefficientRing& ring, std::vector<Cell> cells) {
  std::map<int, std::size_t> rank;
  for (auto& cell : cells) {
    cell.k = ring.normalize(cell.k);
    if (!cell.sphere && sgn(cell.k) == 0) throw ValidationError("disk cells need a nonzero coefficient");
    cell.a = rank[cell.degree]++;
    if (!cell.sphere) cell.b = rank[cell.degree + 1]++;
  }
  CellComplex out;
  out.ring = ring;
  out.cells = cells;
  if (rank.empty()) {
    out.cellular = out.complex = ChainComplex(ring);
    return out;
  }
  const int lo = rank.begin()->first, hi = rank.rbegin()->first;
  std::vector<std::size_t> ranks;
  for (int n = lo; n <= hi; ++n) ranks.push_back(rank.count(n) ? rank[n] : 0);
  std::map<int, ExactMatrix> diffs;
  for (int n = lo; n <= hi; ++n) diffs.emplace(n, ExactMatrix(ring, rank.count(n + 1) ? rank[n + 1] : 0, rank[n]));
  for (const auto& cell : cells)
    if (!cell.sphere) diffs.at(cell.degree).set(cell.b, cell.a, cell.k);
  out.cellular = out.complex = ChainComplex(ring, lo, ranks, diffs);
  return out;
}

CellComplex conjugate(Rng& rng, const CellComplex& c, long entry_bound) {
  Conjugated conj = conjugate_complex(rng, c.complex, entry_bound);
  CellComplex out = c;
  out.complex = conj.complex;
  for (auto& [n, p] : conj.p) out.basis.insert_or_assign(n, p * c.basis_at(n));
  for (auto& [n, pi] : conj.p_inv) out.basis_inv.insert_or_assign(n, c.basis_inv_at(n) * pi);
  return out;
}

CellComplex shift(const CellComplex& c, int k) {
  CellComplex out;
  out.ring = c.ring;
  out.cells = c.cells;
  const Scalar s = (k % 2 == 0) ? 1 : -1;
  for (auto& cell : out.cells) {
    cell.degree -= k;
    cell.k = c.ring.normalize(cell.k * s);
  }
  out.cellular = shift(c.cellular, k);
  out.complex = shift(c.complex, k);
  for (const auto& [n, b] : c.basis) out.basis.emplace(n - k, b);
  for (const auto& [n, b] : c.basis_inv) out.basis_inv.emplace(n - k, b);
  return out;
}

CellComplex direct_sum(const CellComplex& x, const CellComplex& y) {
  require_same_ring(x.ring, y.ring, "direct_sum");
  CellComplex out;
  out.ring = x.ring;
  out.cells = x.cells;
  for (Cell cell : y.cells) {
    cell.a += x.complex.rank(cell.degree);
    if (!cell.sphere) cell.b += x.complex.rank(cell.degree + 1);
    out.cells.push_back(cell);
  }
  out.cellular = biproduct(x.cellular, y.cellular).sum;
  out.complex = biproduct(x.complex, y.complex).sum;
  for (int n = out.complex.lo(); n <= out.complex.hi(); ++n) {
    out.basis.emplace(n, block_diagonal(x.basis_at(n), y.basis_at(n)));
    out.basis_inv.emplace(n, block_diagonal(x.basis_inv_at(n), y.basis_inv_at(n)));
  }
  return out;
}

CellComplex random_cell_complex(Rng& rng, const CoefficientRing& ring, const RandomProfile& profile) {
  std::map<int, std::size_t> rank;
  std::vector<Cell> cells;
  auto fits = [&](int n) { return rank[n] < profile.max_rank; };
  const long spheres = rng.uniform(0, static_cast<long>(profile.max_spheres));
  for (long i = 0; i < spheres; ++i) {
    int n = static_cast<int>(rng.uniform(profile.lo, profile.hi));
    if (!fits(n)) continue;
    ++rank[n];
    cells.push_back({true, n, 1, 0, 0});
  }
  auto add_disks = [&](std::size_t max_count, bool torsion) {
    if (profile.hi <= profile.lo) return;
    const long count = rng.uniform(0, static_cast<long>(max_count));
    for (long i = 0; i < count; ++i) {
      int n = static_cast<int>(rng.uniform(profile.lo, profile.hi - 1));
      long k = torsion ? rng.uniform(2, std::max(2L, profile.max_torsion)) : 1;
      if (rng.coin()) k = -k;
      if (!fits(n) || !fits(n + 1)) continue;
      ++rank[n];
      ++rank[n + 1];
      cells.push_back({false, n, Scalar(k), 0, 0});
    }
  };
  add_disks(profile.max_disks, false);
  if (!ring.is_field()) add_disks(profile.max_torsion_disks, true);
  CellComplex c = make_cell_complex(ring, cells);
  return profile.conjugate ? conjugate(rng, c, profile.entry_bound) : c;
}

RandomComplex random_complex(std::uint64_t seed, const CoefficientRing& ring, const RandomProfile& profile) {
  Rng rng(seed);
  CellComplex c = random_cell_complex(rng, ring, profile);
  return {c.complex, c.ground_truth()};
}

ChainMap random_chain_map(Rng& rng, const CellComplex& x, const CellComplex& y, long coeff_bound) {
  require_same_ring(x.ring, y.ring, "random_chain_map");
  const auto& ring = x.ring;
  const auto& yc = y.cellular;
  std::map<int, ExactMatrix> f;
  auto comp = [&](int n) -> ExactMatrix& {
    auto it = f.find(n);
    if (it == f.end()) it = f.emplace(n, ExactMatrix(ring, yc.rank(n), x.cellular.rank(n))).first;
    return it->second;
  };
  auto coeff = [&]() { return Scalar(rng.uniform(-coeff_bound, coeff_bound)); };
  auto random_cycle = [&](int n) {
    ExactMatrix v(ring, yc.rank(n), 1);
    for (const auto& cell : y.cells) {
      if (cell.sphere && cell.degree == n) v.set(cell.a, 0, v.at(cell.a, 0) + coeff());
      if (!cell.sphere && cell.degree + 1 == n) v.set(cell.b, 0, v.at(cell.b, 0) + coeff());
    }
    return v;
  };
  auto random_element = [&](int n) {
    ExactMatrix v(ring, yc.rank(n), 1);
    for (std::size_t i = 0; i < v.rows(); ++i) v.set(i, 0, coeff());
    return v;
  };

  for (const auto& cell : x.cells) {
    const int n = cell.degree;
    if (cell.sphere) {
      if (yc.rank(n) > 0) comp(n).paste(0, cell.a, random_cycle(n));
      continue;
    }
    ExactMatrix fa = random_element(n);
    ExactMatrix fb(ring, yc.rank(n + 1), 1);
    if (is_unit_scalar(ring, cell.k)) {
      fa = fa + random_cycle(n);
      fb = (yc.diff(n) * fa).scaled(ring.inverse(cell.k));
    } else {
      // f(a) = k y + c + Σ m a', f(b) = d y + Σ t (k'/g) b' with m = t k / g.
      fb = yc.diff(n) * fa;
      fa = fa.scaled(cell.k) + random_cycle(n);
      for (const auto& other : y.cells) {
        if (other.sphere || other.degree != n) continue;
        mpz_class k = cell.k.get_num(), k2 = other.k.get_num(), g;
        mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), k2.get_mpz_t());
        long t = rng.uniform(-coeff_bound, coeff_bound);
        fa.set(other.a, 0, fa.at(other.a, 0) + Scalar(mpz_class(t * (k / g))));
        fb.set(other.b, 0, fb.at(other.b, 0) + Scalar(mpz_class(t * (k2 / g))));
      }
    }
    if (yc.rank(n) > 0) comp(n).paste(0, cell.a, fa);
    if (yc.rank(n + 1) > 0) comp(n + 1).paste(0, cell.b, fb);
  }
  std::map<int, ExactMatrix> conj;
  for (const auto& [n, m] : f) conj.emplace(n, y.basis_at(n) * m * x.basis_inv_at(n));
  ChainMap out(x.complex, y.complex, conj);
  if (!validate(out).ok) throw Error("random_chain_map: generated map is not a chain map");
  return out;
}

SplitMono random_split_mono(Rng& rng, const CoefficientRing& ring, const RandomProfile& profile) {
  CellComplex x = random_cell_complex(rng, ring, profile);
  CellComplex q = random_cell_complex(rng, ring, profile);
  ChainMap tau = random_chain_map(rng, q, shift(x, 1));
  const ChainComplex& xc = x.complex;
  const ChainComplex& qc = q.complex;
  const int lo = std::min(xc.is_zero() ? qc.lo() : xc.lo(), qc.is_zero() ? xc.lo() : qc.lo());
  const int hi = std::max(xc.is_zero() ? qc.hi() : xc.hi(), qc.is_zero() ? xc.hi() : qc.hi());
  std::vector<std::size_t> ranks;
  std::map<int, ExactMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(xc.rank(n) + qc.rank(n));
    diffs.emplace(n, block2x2(xc.diff(n), tau.component(n), ExactMatrix(ring, qc.rank(n + 1), xc.rank(n)),
                              qc.diff(n)));
  }
  ChainComplex y0(ring, lo, ranks, diffs);
  Conjugated y = conjugate_complex(rng, y0, profile.entry_bound);
  std::map<int, ExactMatrix> f, comp;
  for (int n = lo; n <= hi; ++n) {
    ExactMatrix p = y.p.count(n) ? y.p.at(n) : id(ring, y0.rank(n));
    f.emplace(n, p.col_range(0, xc.rank(n)));
    comp.emplace(n, p.col_range(xc.rank(n), qc.rank(n)));
  }
  return {ChainMap(xc, y.complex, f), comp};
}

ChainMap random_quasi_iso(Rng& rng, const CoefficientRing& ring, const RandomProfile& profile) {
  CellComplex x = random_cell_complex(rng, ring, profile);
  RandomProfile disks = profile;
  disks.max_spheres = 0;
  disks.max_torsion_disks = 0;
  disks.max_disks = std::max<std::size_t>(1, profile.max_disks);
  CellComplex k = random_cell_complex(rng, ring, disks);
  ChainMap phi = random_chain_map(rng, x, k, 1);
  Biproduct sum = biproduct(x.complex, k.complex);
  ChainMap incl = sum.in_a + sum.in_b * phi;
  Conjugated y = conjugate_complex(rng, sum.sum, profile.entry_bound);
  std::map<int, ExactMatrix> p;
  for (const auto& [n, m] : y.p) p.emplace(n, m);
  ChainMap change(sum.sum, y.complex, p);
  return change * incl;
}

}  // namespace chainlab
