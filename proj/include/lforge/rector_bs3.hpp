#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lforge/newton.hpp"
#include "lforge/wilkerson.hpp"

namespace lforge {

// ---------------------------------------------------------------- KO model

/// Z[xi, bR]/(xi^2 - 4 bR)[[x]] with |x| = 4, so xi*x and bR*x^2 sit in
/// degree 0. The psi^2 action is recorded on xi*x.
struct KOModelStructure {
  PresentationPtr presentation;
  TruncatedSeries psi2_xi_x;

  /// Default truncation 12: filtration below 12.
  static PresentationPtr default_presentation(int truncation = 12, const std::string& name = "x");
  /// Checks the shape 4 xi x + 2a bR x^2 below filtration 9 (ShapeError).
  static KOModelStructure make(TruncatedSeries psi2_xi_x);
  /// The structure with psi^2(xi x) = 4 xi x + 2a bR x^2.
  static KOModelStructure with_a(long a, int truncation = 12);
};

struct AInvariant {
  mpz_class raw;   // the integer a read from the bR x^2 slot
  int residue = 0;     // a mod 24 in [0, 24)
  int canonical = 0;   // min(residue, 24 - residue), one of 1, 5, 7, 11
};

/// Throws ShapeError when psi^2(xi x) lacks the 4 xi x term, has an odd bR x^2
/// coefficient, or carries other terms below filtration 9; throws
/// MalformedStructure when a is not coprime to 24.
AInvariant a_invariant(const KOModelStructure& s);

/// ((X/2), (X/3)) from a mod 24. Throws InputError unless gcd(a, 24) = 1.
std::pair<int, int> signs_from_a(long a);

/// Residue 6 sigma2 + eps a_Y mod 24, asserted to equal +-a_Y. Throws
/// InvalidTransport unless 4 divides sigma2.
int transport_a(int eps, const mpz_class& sigma2, const mpz_class& a_y);

struct KOIntertwiner {
  bool exists = false;
  int epsilon = 0;
  mpz_class sigma2;  // sigma(xi x) = eps xi y + sigma2 bR y^2 + ...
  std::string reason;
};

/// Solves sigma psi^2_X = psi^2_Y sigma below filtration 9 for
/// sigma(xi x) = eps xi y + sigma2 bR y^2, with 4 | sigma2.
KOIntertwiner find_ko_intertwiner(const KOModelStructure& x, const KOModelStructure& y);

// ----------------------------------------------------------------- K model

/// Z[[v]] with v of weight 4 and degree 0, psi^p(v) for a prime set.
struct KModelStructure {
  AdamsFamily adams;
  std::vector<int> primes;

  /// Truncation as a maximal v-power.
  int max_power() const { return (adams.presentation()->truncation() - 1) / 4; }

  static PresentationPtr default_presentation(int max_power, const std::string& name = "v");
  /// Checks psi^p(v) = p^2 v + ... and the Frobenius congruence for every
  /// listed prime (MalformedStructure).
  static KModelStructure make(AdamsFamily adams, std::vector<int> primes);
};

/// q_k with q_k(t + 1/t - 2) = t^k + t^-k - 2, coefficients of v^1..v^T.
std::vector<mpz_class> chebyshev_polynomial(int k, int max_power);

/// psi^k(v) = q_k(v) for 1 <= k <= max(exponent_bound, primes).
KModelStructure chebyshev_structure(const std::vector<int>& primes, int max_power,
                                    int exponent_bound = kDefaultExponentBound);

/// Sign eps with [v^{(p+1)/2}] psi^p(v) = 2 eps p mod p^2. Throws
/// MalformedStructure when the slot is truncated away or the value is not
/// +-2p.
int odd_sign(const KModelStructure& s, int p);

struct RectorProfile {
  std::optional<int> a;        // canonical representative
  std::map<int, int> signs;    // prime -> +-1

  /// e.g. "a=1 (mod 24); (X/2)=+1 (X/3)=+1 (X/5)=+1"
  std::string to_string() const;
  friend bool operator==(const RectorProfile&, const RectorProfile&) = default;
};

/// Profile from the available models; odd signs come from the K model for
/// its odd primes, (X/2) and (X/3) from a when KO data is present. A
/// disagreement at 3 raises MalformedStructure.
RectorProfile rector_profile(const KModelStructure* k, const KOModelStructure* ko);

struct ConstructOptions {
  /// Search box for the free coefficients: |c| <= box_factor * p0^2.
  int box_factor = 3;
  int exponent_bound = 6;
};

/// Searches psi^{p0}(v) degree by degree (p0 the least prime listed or below the exponent bound) with every
/// other psi^q forced by commutation, subject to Frobenius, the target odd
/// signs and integrality; composites are filled multiplicatively and the
/// result must pass certify. Throws Unsatisfiable with the deepest level
/// reached.
KModelStructure construct_structure(const std::map<int, int>& target_signs, const std::vector<int>& primes,
                                    int max_power, const ConstructOptions& options = {});

struct Refutation {
  int epsilon = 0;
  int degree = 0;
  int prime = 0;
  std::string reason;
};

struct Intertwiner {
  enum class Kind { Isomorphic, Distinct, Inconclusive };
  Kind kind = Kind::Distinct;
  int degree_bound = 0;
  /// sigma(v) = sum coefficients[k] v^k for k = 1..degree_bound.
  std::vector<mpz_class> coefficients;
  std::vector<Refutation> refutations;

  std::string witness() const;
};

struct IntertwinerOptions {
  /// Also try sigma(v) = -v + ...; this reverses the orientation and acts on
  /// odd signs by (-1)^{(p-1)/2}.
  bool allow_reversal = false;
};

/// Solves sigma psi^p_A = psi^p_B sigma for sigma(v) = eps v + a_2 v^2 + ...
/// up to degree D; each a_n is forced by (p^{2n} - p^2) a_n = known.
Intertwiner find_intertwiner(const KModelStructure& a, const KModelStructure& b, int degree_bound,
                             const IntertwinerOptions& options = {});

/// The structure B with phi psi^k_A = psi^k_B phi for every installed k.
KModelStructure conjugate(const KModelStructure& a, const TruncatedSeries& phi_v);

}  // namespace lforge
