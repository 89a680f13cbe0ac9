#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace chainlab {

/// Exact scalar. Integers and residues are stored with denominator 1.
using Scalar = mpq_class;

enum class RingKind { Integers, Rationals, PrimeField };

/// One of Z, Q or F_p. Every module over these rings is a module over a
/// principal ideal domain, so submodules of free modules are free and
/// kernels/images of matrices have bases.
class CoefficientRing {
 public:
  static CoefficientRing integers() { return CoefficientRing(RingKind::Integers, 0); }
  static CoefficientRing rationals() { return CoefficientRing(RingKind::Rationals, 0); }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static CoefficientRing prime_field(std::uint64_t p);
  /// Accepts "Z", "Q" and "F<p>" such as "F2" or "F101".
  static CoefficientRing parse(std::string_view text);

  RingKind kind() const { return kind_; }
  bool is_field() const { return kind_ != RingKind::Integers; }
  /// p for F_p, 0 otherwise.
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;

  /// Canonical representative of x; throws if x is not an element of the ring
  /// (a non-integral rational over Z, or a residue whose denominator is
  /// divisible by p).
  Scalar normalize(const Scalar& x) const;
  bool contains(const Scalar& x) const;

  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }
  bool is_unit(const Scalar& a) const;
  /// Multiplicative inverse; throws std::domain_error for non-units.
  Scalar inverse(const Scalar& a) const;
  /// Exact division a/b when b divides a in the ring.
  bool divides(const Scalar& b, const Scalar& a) const;

  friend bool operator==(const CoefficientRing& a, const CoefficientRing& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }
  friend bool operator!=(const CoefficientRing& a, const CoefficientRing& b) { return !(a == b); }

 private:
  CoefficientRing(RingKind kind, std::uint64_t p) : kind_(kind), p_(p) {}
  // Cheap reduction of values already known to be ring elements.
  Scalar reduce(Scalar x) const;

  RingKind kind_;
  std::uint64_t p_;
};

void require_same_ring(const CoefficientRing& a, const CoefficientRing& b, const char* what);

}  // namespace chainlab
