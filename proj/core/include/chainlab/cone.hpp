#pragma once

#include <map>
#include <optional>
#include <vector>

#include "chainlab/complex.hpp"

namespace chainlab {

/// Cone(f)^n = X^{n+1} ⊕ Y^n with d = [[-d_X, 0], [f, d_Y]].
struct Cone {
  ChainComplex complex;
  ChainMap inject;   // Y -> Cone(f), y ↦ (0, y)
  ChainMap project;  // Cone(f) -> X[1], (x, y) ↦ x
};

Cone cone(const ChainMap& f);

/// Cyl(f)^n = X^n ⊕ X^{n+1} ⊕ Y^n with d = [[d_X, -1, 0], [0, -d_X, 0], [0, f, d_Y]].
struct Cylinder {
  ChainComplex complex;
  ChainMap in_y;     // y ↦ (0, 0, y)
  ChainMap out_y;    // (x', x, y) ↦ f x' + y
  ChainMap in_x;     // x ↦ (x, 0, 0)
  ChainMap to_cone;  // (x', x, y) ↦ (x, y)
  Homotopy homotopy;  // id ≃ in_y ∘ out_y, s(x', x, y) = (0, -x', 0)
};

Cylinder cylinder(const ChainMap& f);

/// Result of comparing Cone(f) with Y/X for a degreewise split mono f.
struct SesComparison {
  ChainComplex quotient;
  ChainMap quotient_map;  // Y -> Y/X
  ChainMap phi;           // Cone(f) -> Y/X, (x, y) ↦ [y]
  ChainMap psi;           // Y/X -> Cone(f)
  Homotopy homotopy;      // id ≃ psi ∘ phi on Cone(f)
};

/// `complements[n]` lists columns spanning a complement of im f(n) in Y^n;
/// [f(n) | complements[n]] must be invertible over the ring. Missing degrees
/// mean an empty complement. Throws ValidationError ("splitting data
/// inconsistent") otherwise.
SesComparison ses_compare(const ChainMap& f, const std::map<int, ExactMatrix>& complements);

/// Candidate triangle X -f-> Y -g-> Z -h-> X[1].
class Triangle {
 public:
  /// Throws ShapeError unless the maps chain correctly.
  Triangle(ChainMap f, ChainMap g, ChainMap h);

  const ChainMap& f() const { return f_; }
  const ChainMap& g() const { return g_; }
  const ChainMap& h() const { return h_; }
  const ChainComplex& x() const { return f_.source(); }
  const ChainComplex& y() const { return g_.source(); }
  const ChainComplex& z() const { return h_.source(); }

  friend bool operator==(const Triangle& a, const Triangle& b) {
    return a.f_ == b.f_ && a.g_ == b.g_ && a.h_ == b.h_;
  }

 private:
  ChainMap f_, g_, h_;
};

/// (f, inject, project).
Triangle cone_triangle(const ChainMap& f);
/// (g, h, -f[1]).
Triangle rotate(const Triangle& t);
/// (-h[-1], f, g).
Triangle unrotate(const Triangle& t);
/// The triangle with every map shifted by k.
Triangle shift(const Triangle& t, int k);

struct LongExactSequence {
  std::vector<ModuleMap> maps;
  std::vector<std::string> labels;  // e.g. "H^0(f)"
  std::vector<bool> exact;          // exact[i]: at the target of maps[i]
  bool all_exact() const;
};

/// Checks exactness at every joint of a composable list of module maps.
LongExactSequence make_les(std::vector<ModuleMap> maps, std::vector<std::string> labels);

/// ... -> H^n(X) -> H^n(Y) -> H^n(Cone f) -> H^{n+1}(X) -> ... over the full support.
LongExactSequence cofiber_les(const ChainMap& f);
/// The same sequence for an arbitrary candidate triangle, the third map read
/// through H^n(X[1]) = H^{n+1}(X).
LongExactSequence triangle_les(const Triangle& t);

}  // namespace chainlab
