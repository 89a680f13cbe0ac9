#include "chainlab/ring.hpp"

#include <charconv>
#include <stdexcept>

#include "chainlab/error.hpp"

namespace chainlab {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

CoefficientRing CoefficientRing::prime_field(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw std::invalid_argument("prime field characteristic must be a prime below 2^31, got " +
                                std::to_string(p));
  }
  return CoefficientRing(RingKind::PrimeField, p);
}

CoefficientRing CoefficientRing::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.size() >= 2 && text.front() == 'F') {
    std::uint64_t p = 0;
    auto digits = text.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return prime_field(p);
  }
  throw std::invalid_argument("unknown coefficient ring '" + std::string(text) +
                              "' (expected Z, Q or F<p>)");
}

std::string CoefficientRing::name() const {
  switch (kind_) {
    case RingKind::Integers:
      return "Z";
    case RingKind::Rationals:
      return "Q";
    case RingKind::PrimeField:
      return "F" + std::to_string(p_);
  }
  return "?";
}

bool CoefficientRing::contains(const Scalar& x) const {
  switch (kind_) {
    case RingKind::Integers:
      return x.get_den() == 1;
    case RingKind::Rationals:
      return true;
    case RingKind::PrimeField:
      return mpz_divisible_ui_p(x.get_den().get_mpz_t(), static_cast<unsigned long>(p_)) == 0;
  }
  return false;
}

Scalar CoefficientRing::normalize(const Scalar& x) const {
  if (!contains(x)) {
    throw ValidationError(x.get_str() + " is not an element of " + name());
  }
  if (kind_ != RingKind::PrimeField) return x;
  mpz_class pz(static_cast<unsigned long>(p_));
  mpz_class num = x.get_num() % pz;
  if (x.get_den() != 1) {
    mpz_class inv;
    mpz_class den = x.get_den() % pz;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    num = (num * inv) % pz;
  }
  if (num < 0) num += pz;
  return Scalar(num);
}

Scalar CoefficientRing::reduce(Scalar x) const {
  if (kind_ != RingKind::PrimeField) return x;
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_num().get_mpz_t(), static_cast<unsigned long>(p_));
  return Scalar(r);
}

bool CoefficientRing::is_unit(const Scalar& a) const {
  switch (kind_) {
    case RingKind::Integers:
      return a == 1 || a == -1;
    case RingKind::Rationals:
    case RingKind::PrimeField:
      return a != 0;
  }
  return false;
}

Scalar CoefficientRing::inverse(const Scalar& a) const {
  if (!is_unit(a)) throw std::domain_error(a.get_str() + " is not a unit in " + name());
  switch (kind_) {
    case RingKind::Integers:
      return a;
    case RingKind::Rationals:
      return Scalar(1) / a;
    case RingKind::PrimeField: {
      mpz_class inv;
      mpz_class pz(static_cast<unsigned long>(p_));
      mpz_invert(inv.get_mpz_t(), a.get_num().get_mpz_t(), pz.get_mpz_t());
      return Scalar(inv);
    }
  }
  return a;
}

bool CoefficientRing::divides(const Scalar& b, const Scalar& a) const {
  if (b == 0) return a == 0;
  if (is_field()) return true;
  return mpz_divisible_p(a.get_num().get_mpz_t(), b.get_num().get_mpz_t()) != 0;
}

void require_same_ring(const CoefficientRing& a, const CoefficientRing& b, const char* what) {
  if (a != b) {
    throw RingMismatch(std::string(what) + ": ring mismatch (" + a.name() + " vs " + b.name() +
                       ")");
  }
}

}  // namespace chainlab
