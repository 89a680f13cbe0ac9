#pragma once

#include <map>

#include "chainlab/complex.hpp"
#include "chainlab/homotopy.hpp"

namespace chainlab {

/// Two-term free resolution P^{-1} -> P^0 of a normal-form module.
/// P^0 lists the free generators first, then one generator per invariant
/// factor; d(-1) is diag(factors) below a zero block.
struct Resolution {
  ChainComplex complex;
  FgModule module;
  /// module.num_generators() x rank(P^0): where each basis vector of P^0 goes
  /// under P^0 -> M, in the module's generator coordinates.
  ExactMatrix augmentation;
};

Resolution free_resolution(const FgModule& m);

/// Bounded complex of finitely presented modules: the degree-n term is
/// R^{generators(n)} / (columns of relations(n)), and diff(n) acts on
/// generators. Used for P ⊗ N and Hom(P, N) with N not free.
class ModuleComplex {
 public:
  explicit ModuleComplex(CoefficientRing ring) : ring_(ring) {}

  /// Throws ShapeError on inconsistent shapes. Well-definedness (d maps
  /// relations into relations, d² lands in relations) is checked by validate().
  void set_term(int n, std::size_t generators, const ExactMatrix& relations);
  void set_diff(int n, const ExactMatrix& d);

  const CoefficientRing& ring() const { return ring_; }
  int lo() const;
  int hi() const;
  std::size_t generators(int n) const;
  ExactMatrix relations(int n) const;
  ExactMatrix diff(int n) const;

 private:
  CoefficientRing ring_;
  std::map<int, std::size_t> gens_;
  std::map<int, ExactMatrix> rels_;
  std::map<int, ExactMatrix> diffs_;
};

ValidationReport validate(const ModuleComplex& c);
/// Complex of free modules viewed as a ModuleComplex without relations.
ModuleComplex as_module_complex(const ChainComplex& c);
FgModule cohomology(const ModuleComplex& c, int n);

/// c ⊗ N, degree n term N^{rank(n)}, differential d ⊗ 1.
ModuleComplex tensor(const ChainComplex& c, const FgModule& n);
/// Hom(P, N) with Hom(P^{-k}, N) in degree k and differential f ↦ -(f ∘ d).
ModuleComplex hom_complex(const ChainComplex& p, const FgModule& n);

/// Free model of a ⊗^L b. Module arguments are replaced by their
/// resolutions; complexes are already free.
ChainComplex derived_tensor(const ChainComplex& a, const ChainComplex& b);
ChainComplex derived_tensor(const FgModule& a, const FgModule& b);
ChainComplex derived_tensor(const ChainComplex& a, const FgModule& b);
ChainComplex derived_tensor(const FgModule& a, const ChainComplex& b);
/// Resolves only the first argument: P(a) ⊗ b.
ModuleComplex derived_tensor_one_sided(const FgModule& a, const FgModule& b);

/// H^{-i}(m ⊗^L n). Throws std::invalid_argument for i < 0.
FgModule tor(const FgModule& m, const FgModule& n, int i);
/// H^i Hom(P(m), n). Throws std::invalid_argument for i < 0.
FgModule ext(const FgModule& m, const FgModule& n, int i);

/// Hom_D(b, c[i]) computed as Hom_K(b, c[i]). Over Z only for b with free
/// cohomology; otherwise throws Unsupported.
FgModule hom_derived(const ChainComplex& b, const ChainComplex& c, int i);

}  // namespace chainlab
