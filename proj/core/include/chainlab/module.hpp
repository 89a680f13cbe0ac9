#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chainlab/matrix.hpp"

namespace chainlab {

/// Finitely generated module R^r ⊕ R/d_1 ⊕ ... ⊕ R/d_k in invariant-factor
/// normal form (d_i >= 2, d_i | d_{i+1}; no factors over a field).
///
/// Generators are ordered torsion first (orders d_1, ..., d_k), then the r
/// free generators. Equality is structural.
class FgModule {
 public:
  explicit FgModule(CoefficientRing ring) : ring_(ring) {}
  /// Throws ValidationError unless the factors already form a normal form.
  FgModule(CoefficientRing ring, std::size_t free_rank, std::vector<mpz_class> invariant_factors);

  static FgModule zero(CoefficientRing ring) { return FgModule(ring); }
  static FgModule free(CoefficientRing ring, std::size_t rank) { return FgModule(ring, rank, {}); }
  /// R/(d): d = 0 gives R, a unit gives 0.
  static FgModule cyclic(CoefficientRing ring, const mpz_class& d);
  /// Normal form of R^free_rank ⊕ ⊕_i R/(orders_i) for arbitrary orders.
  static FgModule from_orders(CoefficientRing ring, std::size_t free_rank,
                              const std::vector<mpz_class>& orders);
  /// Parses "0", "Z", "Z^2", "Z/4", "Z/2+Z/4+Z", "Q^3", "F5^2" (whitespace and
  /// the symbol "⊕" are accepted as separators besides "+"). A bare integer n
  /// means R/(n).
  static FgModule parse(const CoefficientRing& ring, std::string_view text);

  const CoefficientRing& ring() const { return ring_; }
  std::size_t free_rank() const { return free_rank_; }
  const std::vector<mpz_class>& invariant_factors() const { return factors_; }
  std::size_t torsion_count() const { return factors_.size(); }
  std::size_t num_generators() const { return factors_.size() + free_rank_; }
  /// Order of generator i; 0 for free generators.
  mpz_class generator_order(std::size_t i) const {
    return i < factors_.size() ? factors_[i] : mpz_class(0);
  }

  bool is_zero() const { return free_rank_ == 0 && factors_.empty(); }
  bool is_free() const { return factors_.empty(); }
  bool is_torsion() const { return free_rank_ == 0; }
  /// Number of elements when finite, 0 otherwise.
  mpz_class order() const;

  /// num_generators x torsion_count matrix with d_i at (i, i).
  ExactMatrix relation_matrix() const;

  /// "0", "Z/2 + Z/6 + Z^2", "Q^3", "F2".
  std::string to_string() const;

  friend bool operator==(const FgModule& a, const FgModule& b) {
    return a.ring_ == b.ring_ && a.free_rank_ == b.free_rank_ && a.factors_ == b.factors_;
  }
  friend bool operator!=(const FgModule& a, const FgModule& b) { return !(a == b); }

 private:
  CoefficientRing ring_;
  std::size_t free_rank_ = 0;
  std::vector<mpz_class> factors_;
};

FgModule direct_sum(const FgModule& a, const FgModule& b);

/// Homomorphism between normal-form modules, stored as the images of the
/// source generators in target-generator coordinates. Torsion coordinates are
/// kept reduced modulo their orders.
class ModuleMap {
 public:
  /// Throws ValidationError when a source relation is not sent into the
  /// target's relation lattice.
  ModuleMap(FgModule source, FgModule target, const ExactMatrix& matrix);

  static ModuleMap identity(const FgModule& m);
  static ModuleMap zero(const FgModule& source, const FgModule& target);

  const FgModule& source() const { return source_; }
  const FgModule& target() const { return target_; }
  const ExactMatrix& matrix() const { return matrix_; }
  bool is_zero() const { return matrix_.is_zero(); }

  /// g * f is the composite g ∘ f.
  friend ModuleMap operator*(const ModuleMap& g, const ModuleMap& f);
  friend ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
  friend ModuleMap operator-(const ModuleMap& a);
  friend bool operator==(const ModuleMap& a, const ModuleMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
  }
  friend bool operator!=(const ModuleMap& a, const ModuleMap& b) { return !(a == b); }

  std::string to_string() const;

 private:
  FgModule source_;
  FgModule target_;
  ExactMatrix matrix_;
};

struct MapAnalysis {
  FgModule kernel;
  FgModule cokernel;
  FgModule image;
  bool is_iso = false;
};

MapAnalysis module_map_analysis(const ModuleMap& f);

/// True iff image(f) = kernel(g) as submodules of f.target() = g.source().
bool is_exact_at(const ModuleMap& f, const ModuleMap& g);

/// Hom_R(m, n) in normal form.
FgModule hom_module(const FgModule& m, const FgModule& n);

}  // namespace chainlab
