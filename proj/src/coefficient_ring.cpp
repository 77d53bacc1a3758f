#include "lforge/coefficient_ring.hpp"

#include <cctype>
#include <string>

#include "lforge/errors.hpp"

namespace lforge {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

CoefficientRing CoefficientRing::integers() { return {RingKind::Integers, 0}; }

CoefficientRing CoefficientRing::integers_mod(unsigned long modulus) {
  if (modulus < 2) throw InputError("IntegersMod requires m >= 2, got " + std::to_string(modulus));
  return {RingKind::IntegersMod, mpz_class(modulus)};
}

CoefficientRing CoefficientRing::prime_field(unsigned long prime) {
  if (!is_prime(prime)) throw InputError("PrimeField requires a prime, got " + std::to_string(prime));
  return {RingKind::PrimeField, mpz_class(prime)};
}

CoefficientRing CoefficientRing::ko_even() { return {RingKind::KOEven, 0}; }

namespace {

unsigned long parse_positive(std::string_view digits, std::string_view whole) {
  if (digits.empty() || digits.size() > 9)
    throw InputError("bad coefficient ring descriptor '" + std::string(whole) + "'");
  unsigned long value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InputError("bad coefficient ring descriptor '" + std::string(whole) + "'");
    value = value * 10 + static_cast<unsigned long>(c - '0');
  }
  return value;
}

}  // namespace

CoefficientRing CoefficientRing::parse(std::string_view text) {
  if (text == "Z" || text == "Integers") return integers();
  if (text == "KOEven" || text == "KO") return ko_even();
  if (text.starts_with("Z/")) return integers_mod(parse_positive(text.substr(2), text));
  if (text.starts_with("GF(") && text.ends_with(")"))
    return prime_field(parse_positive(text.substr(3, text.size() - 4), text));
  throw InputError("unknown coefficient ring '" + std::string(text) +
                   "' (expected Z, Z/m, GF(p) or KOEven)");
}

void CoefficientRing::normalize(mpz_class& value) const {
  if (modulus_ == 0) return;
  mpz_fdiv_r(value.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
}

bool CoefficientRing::is_unit(const mpz_class& value) const {
  if (modulus_ == 0) return value == 1 || value == -1;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
  return g == 1;
}

mpz_class CoefficientRing::inverse(const mpz_class& value) const {
  if (!is_unit(value)) throw NotInvertible(value.get_str() + " is not a unit in " + to_string());
  if (modulus_ == 0) return value;
  mpz_class r;
  mpz_invert(r.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

bool CoefficientRing::divisible(const mpz_class& value, const mpz_class& divisor) const {
  if (modulus_ == 0) {
    if (divisor == 0) return value == 0;
    return mpz_divisible_p(value.get_mpz_t(), divisor.get_mpz_t()) != 0;
  }
  // value in dR for R = Z/m  iff  gcd(d, m) | value.
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), divisor.get_mpz_t(), modulus_.get_mpz_t());
  return mpz_divisible_p(value.get_mpz_t(), g.get_mpz_t()) != 0;
}

std::string CoefficientRing::to_string() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::IntegersMod: return "Z/" + modulus_.get_str();
    case RingKind::PrimeField: return "GF(" + modulus_.get_str() + ")";
    case RingKind::KOEven: return "KOEven";
  }
  return "?";
}

}  // namespace lforge
