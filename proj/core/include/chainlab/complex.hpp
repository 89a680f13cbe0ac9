#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chainlab/matrix.hpp"
#include "chainlab/module.hpp"
#include "chainlab/subquotient.hpp"

namespace chainlab {

/// Bounded cochain complex of free modules R^{rank(n)} with d(n): degree n ->
/// degree n+1, stored as a rank(n+1) x rank(n) matrix. rank() and diff() are
/// total: outside the support they return 0 and zero-shaped matrices.
///
/// The constructor checks shapes only; d² = 0 is checked by validate().
class ChainComplex {
 public:
  explicit ChainComplex(CoefficientRing ring) : ring_(ring) {}
  /// ranks[i] is the rank in degree lo + i. Missing differentials are zero.
  ChainComplex(CoefficientRing ring, int lo, std::vector<std::size_t> ranks,
               const std::map<int, ExactMatrix>& diffs = {});

  /// R^rank in a single degree.
  static ChainComplex concentrated(CoefficientRing ring, int degree, std::size_t rank);
  /// R^{d.cols()} in `degree` -> R^{d.rows()} in `degree + 1`.
  static ChainComplex two_term(const ExactMatrix& d, int degree);

  const CoefficientRing& ring() const { return ring_; }
  /// Support [lo, hi] after trimming zero ranks; lo > hi for the zero complex.
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  bool is_zero() const { return ranks_.empty(); }
  std::size_t rank(int n) const;
  ExactMatrix diff(int n) const;
  std::size_t total_rank() const;

  friend bool operator==(const ChainComplex& a, const ChainComplex& b);
  friend bool operator!=(const ChainComplex& a, const ChainComplex& b) { return !(a == b); }

  std::string to_string() const;

 private:
  bool in_support(int n) const { return n >= lo_ && n <= hi(); }

  CoefficientRing ring_;
  int lo_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<ExactMatrix> diffs_;  // diffs_[i] = d(lo + i)
};

struct ValidationReport {
  bool ok = true;
  std::optional<int> degree;  // first offending degree
  std::string message;
};

/// ok iff d(n+1) d(n) = 0 for all n.
ValidationReport validate(const ChainComplex& c);
/// Throws ValidationError with the offending degree.
void require_valid(const ChainComplex& c);

/// Degreewise map source -> target; component(n) is target.rank(n) x
/// source.rank(n). Equality is equality in Ch(A).
class ChainMap {
 public:
  ChainMap(ChainComplex source, ChainComplex target, const std::map<int, ExactMatrix>& components = {});

  static ChainMap identity(const ChainComplex& c);
  static ChainMap zero(const ChainComplex& source, const ChainComplex& target);
  /// Same component in every degree, e.g. multiplication by a scalar on a
  /// complex mapped to itself.
  static ChainMap scalar(const ChainComplex& c, const Scalar& s);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  const CoefficientRing& ring() const { return source_.ring(); }
  ExactMatrix component(int n) const;
  /// Degrees where either complex is nonzero.
  int lo() const;
  int hi() const;

  bool is_zero() const;

  friend ChainMap operator*(const ChainMap& g, const ChainMap& f);
  friend ChainMap operator+(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator-(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator-(const ChainMap& a);
  friend bool operator==(const ChainMap& a, const ChainMap& b);
  friend bool operator!=(const ChainMap& a, const ChainMap& b) { return !(a == b); }

 private:
  ChainComplex source_;
  ChainComplex target_;
  std::map<int, ExactMatrix> components_;  // nonzero-area degrees only
};

/// ok iff d_target(n) f(n) = f(n+1) d_source(n) for all n.
ValidationReport validate(const ChainMap& f);
void require_valid(const ChainMap& f);

/// s(n): source degree n -> target degree n-1, witnessing
/// from - to = s d + d s.
class Homotopy {
 public:
  Homotopy(ChainMap from, ChainMap to, const std::map<int, ExactMatrix>& components = {});

  const ChainMap& from_map() const { return from_; }
  const ChainMap& to_map() const { return to_; }
  ExactMatrix component(int n) const;
  /// The map s d + d s.
  ChainMap boundary() const;

 private:
  ChainMap from_;
  ChainMap to_;
  std::map<int, ExactMatrix> components_;
};

ValidationReport validate(const Homotopy& h);

/// rank(n) = c.rank(n+k), d = (-1)^k c.diff(n+k).
ChainComplex shift(const ChainComplex& c, int k);
/// f[k](n) = f(n+k); shifting maps carries no sign.
ChainMap shift(const ChainMap& f, int k);

struct Biproduct {
  ChainComplex sum;
  ChainMap in_a, in_b, pr_a, pr_b;
};

Biproduct biproduct(const ChainComplex& a, const ChainComplex& b);
/// f ⊕ g between biproducts.
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);

/// Degree n is ⊕_{i+j=n} a^i ⊗ b^j, blocks ordered by increasing i,
/// Kronecker order a-major; d = d_a ⊗ 1 + (-1)^i 1 ⊗ d_b.
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);
/// f ⊗ g : a ⊗ b -> a' ⊗ b' for maps of degree zero.
ChainMap tensor(const ChainMap& f, const ChainMap& g);
/// The isomorphism a ⊗ b -> b ⊗ a, x ⊗ y ↦ (-1)^{ij} y ⊗ x.
ChainMap tensor_swap(const ChainComplex& a, const ChainComplex& b);

/// H^n(c) = ker d(n) / im d(n-1) with its coordinate machinery.
Subquotient cohomology_presentation(const ChainComplex& c, int n);
FgModule cohomology(const ChainComplex& c, int n);
/// Nonzero cohomology by degree.
std::map<int, FgModule> cohomology_all(const ChainComplex& c);
bool is_acyclic(const ChainComplex& c);

ModuleMap induced_map(const ChainMap& f, int n);
bool is_quasi_iso(const ChainMap& f);

}  // namespace chainlab
