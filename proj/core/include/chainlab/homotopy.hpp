#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainlab/cone.hpp"
#include "chainlab/linear_system.hpp"

namespace chainlab {

/// s with f = s d + d s, found by one linear solve over the ring. Over Z,
/// nullopt means no integral null-homotopy exists.
std::optional<Homotopy> find_null_homotopy(const ChainMap& f);
/// A homotopy from f to g, if one exists.
std::optional<Homotopy> find_homotopy(const ChainMap& f, const ChainMap& g);

/// Hom_K(b, c) = (chain maps b -> c) / (null-homotopic maps), with the
/// coordinates needed to move between maps and module elements. The ambient
/// space stacks the row-major entries of f(n) for n = lo..hi.
class HomInK {
 public:
  HomInK(const ChainComplex& b, const ChainComplex& c);

  const ChainComplex& source() const { return b_; }
  const ChainComplex& target() const { return c_; }
  const FgModule& module() const { return sq_.module(); }
  const Subquotient& presentation() const { return sq_; }

  /// Ambient coordinates of a chain map b -> c.
  ExactMatrix vectorize(const ChainMap& f) const;
  /// The chain map with ambient coordinates `column`.
  ChainMap devectorize(const ExactMatrix& column) const;
  /// Representative chain map of generator i.
  ChainMap generator(std::size_t i) const;
  /// Coordinates of the class of f.
  ExactMatrix class_of(const ChainMap& f) const;

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  std::size_t offset(int n) const;
  std::size_t ambient_rank() const { return ambient_; }

 private:
  ChainComplex b_, c_;
  int lo_ = 0, hi_ = -1;
  std::vector<std::size_t> offsets_;
  std::size_t ambient_ = 0;
  Subquotient sq_;
};

FgModule hom_in_K(const ChainComplex& b, const ChainComplex& c);

/// Hom_K(p, u) : Hom_K(p, y) -> Hom_K(p, y'), f ↦ u ∘ f.
ModuleMap hom_K_post(const ChainMap& u, const HomInK& source, const HomInK& target);
/// Hom_K(u, p) : Hom_K(x, p) -> Hom_K(x', p), f ↦ f ∘ u for u : x' -> x.
ModuleMap hom_K_pre(const ChainMap& u, const HomInK& source, const HomInK& target);

struct HomotopyInverse {
  ChainMap g;
  Homotopy left;   // g ∘ f ≃ id
  Homotopy right;  // f ∘ g ≃ id
};

/// Solves jointly for g and both homotopies.
std::optional<HomotopyInverse> find_homotopy_inverse(const ChainMap& f);

/// Comparison of a candidate triangle with the cone triangle of t.f(): a
/// chain map w : Cone(t.f) -> Z with w ∘ inject = g exactly, a homotopy
/// k : h ∘ w ≃ project, and w a quasi-isomorphism.
struct ExactnessCertificate {
  ChainMap w;
  Homotopy k;
};

std::optional<ExactnessCertificate> certify_exact(const Triangle& t);

enum class Verdict { Certified, Refuted, Unknown };
std::string to_string(Verdict v);

struct ExactnessReport {
  Verdict verdict;
  std::optional<ExactnessCertificate> certificate;
  LongExactSequence les;
};

/// Certified when certify_exact succeeds; Refuted when the cohomology
/// sequence of t fails exactness, or over a field when no certificate
/// exists; Unknown otherwise.
ExactnessReport exactness_verdict(const Triangle& t);

/// One step of the iterated cofiber sequence X -> Y -> C -> X[1] -> Y[1] -> ...
struct CofiberStep {
  Triangle triangle;
  ChainComplex materialized_cone;  // cone of the triangle's first map
  ExactnessReport report;
};

/// rotate^k of the cone triangle of f for k = 0..length-1, each checked.
std::vector<CofiberStep> iterated_cofiber(const ChainMap& f, int length);

}  // namespace chainlab
