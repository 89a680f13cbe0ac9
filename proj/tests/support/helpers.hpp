#pragma once

// Small conveniences shared by the unit tests and the acceptance binary.

#include <vector>

#include "chainlab/complex.hpp"
#include "oracles.hpp"

namespace testkit {

using namespace chainlab;

inline const CoefficientRing ZZ = CoefficientRing::integers();
inline const CoefficientRing QQ = CoefficientRing::rationals();

inline ExactMatrix mat(const CoefficientRing& ring, std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Scalar>> s;
  for (auto& r : rows) s.emplace_back(r.begin(), r.end());
  return ExactMatrix::from_rows(ring, s);
}

inline ExactMatrix one_by_one(const CoefficientRing& ring, long v) { return mat(ring, {{v}}); }

inline oracle::IntMatrix to_ints(const ExactMatrix& m) {
  oracle::IntMatrix out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j).get_num().get_si();
  return out;
}

inline long oracle_char(const CoefficientRing& ring) {
  switch (ring.kind()) {
    case RingKind::Integers: return 0;
    case RingKind::Rationals: return 1;
    default: return static_cast<long>(ring.characteristic());
  }
}

// Cohomology via determinantal divisors / modular rank, no library linear algebra.
inline FgModule oracle_cohomology(const ChainComplex& c, int n) {
  auto o = oracle::cohomology(c.rank(n), to_ints(c.diff(n - 1)), to_ints(c.diff(n)), oracle_char(c.ring()));
  return FgModule(c.ring(), static_cast<std::size_t>(o.free_rank), o.torsion);
}

// [R -k-> R] in degrees lo, lo+1.
inline ChainComplex disk(const CoefficientRing& ring, long k, int lo) {
  return ChainComplex::two_term(one_by_one(ring, k), lo);
}

inline ChainComplex sphere(const CoefficientRing& ring, int degree, std::size_t rank = 1) {
  return ChainComplex::concentrated(ring, degree, rank);
}

}  // namespace testkit
