#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lforge/execution.hpp"
#include "lforge/newton.hpp"

namespace lforge {

inline constexpr int kDefaultPrimeBound = 7;

struct CheckReport {
  std::string name;  // e.g. "identity", "commutation(2,3)", "frobenius(5)"
  bool passed = false;
  std::string witness;  // first failing generator and the offending series

  explicit operator bool() const noexcept { return passed; }
  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

CheckReport check_identity(const AdamsFamily& A);
/// psi^l applied to psi^k(g) against psi^{kl}(g). Throws MissingEntry.
CheckReport check_commutation(const AdamsFamily& A, int k, int l);
/// psi^p(g) - g^p divisible by p. Throws MissingEntry.
CheckReport check_frobenius(const AdamsFamily& A, int p);

struct Certificate {
  bool passed = false;
  int prime_bound = kDefaultPrimeBound;
  int exponent_bound = kDefaultExponentBound;
  int truncation = 0;
  std::vector<CheckReport> checks;
  /// First failing check, or the divisibility failure of the lambda solve.
  std::string failure;
  std::optional<LambdaFamily> lambda;
};

/// Identity, every ordered commutation pair k, l >= 2 with kl <= K, and
/// Frobenius for primes p <= P; on success over a torsion-free ring the
/// lambda family up to K is attached.
Certificate certify(const AdamsFamily& A, int prime_bound = kDefaultPrimeBound,
                    int exponent_bound = kDefaultExponentBound, Execution exec = Execution::Parallel);

}  // namespace lforge
