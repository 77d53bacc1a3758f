#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lforge {

enum class RingKind { Integers, IntegersMod, PrimeField, KOEven };

/// Exact coefficient ring of a presentation.
///
/// KOEven is Z[xi, bR]/(xi^2 - 4 bR) with deg xi = -4 and deg bR = -8. Its two
/// symbols are carried as extra exponent slots on every monomial, so the
/// scalar part of a coefficient is always an integer; the rewrite
/// xi^2 -> 4 bR keeps the xi exponent in {0, 1}.
class CoefficientRing {
 public:
  static CoefficientRing integers();
  static CoefficientRing integers_mod(unsigned long modulus);
  static CoefficientRing prime_field(unsigned long prime);
  static CoefficientRing ko_even();

  /// Accepts "Z", "Z/m", "GF(p)" and "KOEven".
  static CoefficientRing parse(std::string_view text);

  RingKind kind() const noexcept { return kind_; }
  /// Zero for the torsion-free rings.
  const mpz_class& modulus() const noexcept { return modulus_; }

  bool is_finite() const noexcept { return modulus_ != 0; }
  bool torsion_free() const noexcept { return modulus_ == 0; }
  bool is_field() const noexcept { return kind_ == RingKind::PrimeField; }

  /// Number of coefficient symbols appended to every exponent vector.
  std::size_t symbol_count() const noexcept { return kind_ == RingKind::KOEven ? 2 : 0; }

  /// Brings an integer into the canonical representative range [0, m).
  void normalize(mpz_class& value) const;

  bool is_unit(const mpz_class& value) const;
  /// Inverse of a unit; throws NotInvertible otherwise.
  mpz_class inverse(const mpz_class& value) const;

  /// True iff value lies in divisor * R.
  bool divisible(const mpz_class& value, const mpz_class& divisor) const;

  std::string to_string() const;

  friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

 private:
  CoefficientRing(RingKind kind, mpz_class modulus) : kind_(kind), modulus_(std::move(modulus)) {}

  RingKind kind_;
  mpz_class modulus_;
};

bool is_prime(unsigned long n);

}  // namespace lforge
