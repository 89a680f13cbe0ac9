#pragma once

#include <map>
#include <string>

#include "chainlab/cone.hpp"
#include "chainlab/homotopy.hpp"

namespace chainlab {

enum class TruncationSide { Below, Above };

/// Below at n: τ^{≤n}, degree n replaced by ker d(n), with the inclusion.
/// Above at n: τ^{≥n+1} = X / τ^{≤n}X, degree n replaced by X^n / ker d(n)
/// (free of rank rank d(n)), with the projection.
struct Truncation {
  ChainComplex complex;
  ChainMap comparison;  // inclusion into c (below) or projection from c (above)
};

Truncation truncate(const ChainComplex& c, int n, TruncationSide side);

/// τ^{≤n}X -> X -> τ^{≥n+1}X -> τ^{≤n}X[1], the last map read off the cone of
/// the inclusion through the comparison with the quotient.
struct TruncationTriangle {
  Triangle triangle;
  SesComparison comparison;           // of the inclusion
  ExactnessCertificate certificate;   // w = phi, k = -project ∘ H
};

TruncationTriangle truncation_triangle(const ChainComplex& c, int n);

struct TStructureVerdict {
  std::map<int, bool> in_le;  // X ∈ T^{≤n}
  std::map<int, bool> in_ge;  // X ∈ T^{≥n}
  bool heart = false;
};

/// Standard t-structure, queried at a single n or over [lo, hi].
TStructureVerdict standard_t_verdict(const ChainComplex& c, int n);
TStructureVerdict standard_t_verdict(const ChainComplex& c, int lo, int hi);

/// H^0 read through τ^{≥0} τ^{≤0}.
FgModule heart_H0(const ChainComplex& c);

bool is_torsion(const FgModule& m);
bool is_torsion_free(const FgModule& m);

/// 0 -> T -> M -> F -> 0 for the torsion / torsion-free pair.
struct TorsionDecomposition {
  FgModule torsion;
  FgModule free;
  ModuleMap inclusion;
  ModuleMap projection;
  std::string note;  // set over fields, where T = 0 always
};

TorsionDecomposition torsion_decompose(const FgModule& m);

/// Tilt of the standard t-structure at (torsion, torsion-free). in_le/in_ge
/// at n use X ∈ D'^{≤n} iff X[n] ∈ D'^{≤0}. Throws Unsupported over fields.
TStructureVerdict tilted_t_verdict(const ChainComplex& c);
TStructureVerdict tilted_t_verdict(const ChainComplex& c, int lo, int hi);

}  // namespace chainlab
