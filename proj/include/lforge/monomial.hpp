#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

#include <gmpxx.h>

namespace lforge {

/// Generators plus coefficient symbols never exceed this many slots.
inline constexpr std::size_t kMaxSlots = 10;
inline constexpr std::size_t kMaxGenerators = 8;

/// Dense exponent vector. Unused trailing slots stay zero, so comparison over
/// the full array is well defined regardless of the presentation width.
struct Monomial {
  std::array<std::uint32_t, kMaxSlots> exps{};

  std::uint32_t& operator[](std::size_t i) noexcept { return exps[i]; }
  std::uint32_t operator[](std::size_t i) const noexcept { return exps[i]; }

  bool is_one() const noexcept {
    for (auto e : exps)
      if (e != 0) return false;
    return true;
  }

  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < kMaxSlots; ++i)
      if (exps[i] > other.exps[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) noexcept {
    Monomial r;
    for (std::size_t i = 0; i < kMaxSlots; ++i) r.exps[i] = a.exps[i] + b.exps[i];
    return r;
  }

  /// Caller guarantees divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const noexcept {
    Monomial r;
    for (std::size_t i = 0; i < kMaxSlots; ++i) r.exps[i] = exps[i] - divisor.exps[i];
    return r;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto e : m.exps) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct Term {
  Monomial monomial;
  mpz_class coeff;

  friend bool operator==(const Term& a, const Term& b) {
    return a.monomial == b.monomial && a.coeff == b.coeff;
  }
};

}  // namespace lforge
