#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "chainlab/complex.hpp"

namespace chainlab {

/// Seeded source of integers. Uses the raw std::mt19937_64 stream (whose
/// output is fixed by the standard) and its own range reduction, so a seed
/// yields the same numbers on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [lo, hi] (modulo reduction; bias is irrelevant here).
  long uniform(long lo, long hi);
  bool coin() { return (next() & 1u) != 0; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::mt19937_64 engine_;
};

struct RandomProfile {
  int lo = -2;                     // support window
  int hi = 2;
  std::size_t max_rank = 4;        // per degree
  std::size_t max_spheres = 3;     // R in one degree
  std::size_t max_disks = 3;       // [R -1-> R]
  std::size_t max_torsion_disks = 0;  // [R -k-> R], k in [2, max_torsion]; Z only
  long max_torsion = 5;
  long entry_bound = 5;            // bound on |entries| of the conjugated differentials
  bool conjugate = true;
};

/// Sphere: one generator in `degree` with zero differential. Disk: a in
/// `degree`, b in degree + 1, d a = k b.
struct Cell {
  bool sphere = true;
  int degree = 0;
  Scalar k = 1;
  std::size_t a = 0;  // index of the bottom generator inside its degree
  std::size_t b = 0;  // index of the top generator (disks only)
};

/// A complex together with its cell decomposition: complex.diff(n) =
/// basis(n+1) * cell_diff(n) * basis_inv(n).
struct CellComplex {
  CoefficientRing ring = CoefficientRing::integers();
  std::vector<Cell> cells;
  ChainComplex cellular{CoefficientRing::integers()};
  ChainComplex complex{CoefficientRing::integers()};
  std::map<int, ExactMatrix> basis;
  std::map<int, ExactMatrix> basis_inv;

  ExactMatrix basis_at(int n) const;
  ExactMatrix basis_inv_at(int n) const;
  /// Cohomology read off the cells.
  std::map<int, FgModule> ground_truth() const;
};

CellComplex random_cell_complex(Rng& rng, const CoefficientRing& ring, const RandomProfile& profile);

struct RandomComplex {
  ChainComplex complex;
  std::map<int, FgModule> ground_truth;  // nonzero degrees only
};

RandomComplex random_complex(std::uint64_t seed, const CoefficientRing& ring, const RandomProfile& profile);

/// Builds a cell complex from explicit cells (no conjugation).
CellComplex make_cell_complex(const CoefficientRing& ring, std::vector<Cell> cells);
/// Same cells with basis changed by random elementary operations, keeping
/// differential entries within `entry_bound`.
CellComplex conjugate(Rng& rng, const CellComplex& c, long entry_bound);
/// The shift X[k] with its induced cell structure.
CellComplex shift(const CellComplex& c, int k);
/// X ⊕ Y with block bases.
CellComplex direct_sum(const CellComplex& x, const CellComplex& y);

/// Random chain map x.complex -> y.complex assembled cell by cell, with
/// structured coefficients in [-coeff_bound, coeff_bound].
ChainMap random_chain_map(Rng& rng, const CellComplex& x, const CellComplex& y, long coeff_bound = 2);

/// A degreewise split mono f : X -> Y with the complement columns expected
/// by ses_compare.
struct SplitMono {
  ChainMap f;
  std::map<int, ExactMatrix> complements;
};

SplitMono random_split_mono(Rng& rng, const CoefficientRing& ring, const RandomProfile& profile);

/// A quasi-isomorphism X -> Y built as (change of basis) ∘ (x ↦ (x, φ x))
/// into X ⊕ K with K contractible.
ChainMap random_quasi_iso(Rng& rng, const CoefficientRing& ring, const RandomProfile& profile);

}  // namespace chainlab
