#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chainlab/cone.hpp"
#include "chainlab/homotopy.hpp"
#include "chainlab/random.hpp"

namespace chainlab {

/// Outcome of one axiom check. Over Z a triangle that cannot be certified
/// may still pass through exactness of its cohomology sequence; that case is
/// recorded in `notes`.
struct CheckReport {
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;

  void fail(std::string why) {
    pass = false;
    notes.push_back(std::move(why));
  }
};

/// Cone triangle of f is certified, and X -id-> X -> 0 -> X[1] is exact.
CheckReport check_tr1(const ChainMap& f);
/// rotate(t), rotate²(t) and unrotate(t) are exact. Fails if t itself is not.
CheckReport check_tr2(const Triangle& t);

struct Tr3Result {
  CheckReport report;
  std::optional<ChainMap> fill;  // Cone(f) -> Cone(f2)
  std::optional<Homotopy> square;  // v∘f ≃ f2∘u
};

/// Square X -f-> Y, X2 -f2-> Y2 with u : X -> X2, v : Y -> Y2 and v∘f ≃ f2∘u
/// (s searched for when not given). The fill is (b, c) ↦ (u b, v c + s b).
/// fill is empty when the square does not commute up to homotopy.
Tr3Result check_tr3(const ChainMap& f, const ChainMap& f2, const ChainMap& u, const ChainMap& v,
                    const std::optional<Homotopy>& s = std::nullopt);

struct Octahedron {
  Cone u, v, w;            // cones of f, g∘f, g
  ChainMap alpha, beta, gamma;  // U -> V, V -> W, W -> U[1]
  ExactnessReport exactness;    // of (alpha, beta, gamma)
  std::vector<std::pair<std::string, bool>> braid;  // commutativities up to homotopy
  CheckReport report;
};

Octahedron check_tr4(const ChainMap& f, const ChainMap& g);

/// Hom_K(probe, -) and Hom_K(-, probe) along X -> Y -> Z -> X[1] -> Y[1],
/// checked for exactness at each middle joint.
CheckReport check_cohomological_functor(const Triangle& t, const ChainComplex& probe);

struct AxiomSummary {
  std::string axiom;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // first few messages
};

struct VerifyAxiomsResult {
  CoefficientRing ring = CoefficientRing::integers();
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::vector<AxiomSummary> axioms;  // TR1, TR2, TR3, TR4, cohomological
  bool all_passed() const;
};

/// Small default profile used by verify_axioms.
RandomProfile axiom_profile();

VerifyAxiomsResult verify_axioms(std::uint64_t seed, const CoefficientRing& ring, std::size_t instances,
                                 const RandomProfile& profile = axiom_profile());

}  // namespace chainlab
