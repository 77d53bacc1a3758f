#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lforge/execution.hpp"
#include "lforge/filtered_map.hpp"

namespace lforge {

/// Finitely presented graded algebra over a PID (the integers or a prime
/// field). Level j means the quotient R^{<=j}, stored as truncation j + 1.
class GradedPresentation {
 public:
  /// Relations are polynomial strings in the generators. `n_override` may
  /// only raise the computed bound.
  GradedPresentation(CoefficientRing ring, std::vector<std::pair<std::string, int>> generators,
                     std::vector<std::string> relations, std::optional<int> n_override = std::nullopt);

  const CoefficientRing& ring() const noexcept { return base_->ring(); }
  const PresentationPtr& base() const noexcept { return base_; }
  /// Presentation of L_j R.
  PresentationPtr at_level(int j) const;
  /// Least integer above every generator degree and every degree of a
  /// nontrivial monomial of a relation, unless raised by the override.
  int bound() const noexcept { return n_; }
  int computed_bound() const noexcept { return computed_n_; }

 private:
  PresentationPtr base_;
  int n_ = 0;
  int computed_n_ = 0;
};

struct GradedTruncation {
  PresentationPtr presentation;
  std::map<long, long> ranks;  // degree -> rank of R^degree
};

GradedTruncation truncate_graded(const GradedPresentation& P, int j);

struct GradedLift {
  FilteredMap map;            // sigma_hat at level j + 1
  mpz_class linear_determinant;
  bool relations_vanish = false;
};

/// Lifts a graded automorphism from level j to j + 1. Requires j > N
/// (LevelTooLow); a relation that fails to vanish raises RelationViolation.
GradedLift lift_graded_automorphism(const FilteredMap& sigma, const GradedPresentation& P);

struct GradedLevelWitness {
  int level = 0;
  int trials = 0;
  int lifted = 0;
  int restriction_ok = 0;
  int relations_ok = 0;
  int determinant_ok = 0;
  /// Exhaustive cross-check: restriction Aut(L_{j+1}) -> Aut(L_j) is onto.
  std::optional<bool> exhaustive_surjective;
  friend bool operator==(const GradedLevelWitness&, const GradedLevelWitness&) = default;
};

struct GradedVerdict {
  bool surjective = false;
  int bound = 0;
  std::vector<GradedLevelWitness> levels;
  std::string conclusion;
  std::string failure;
  friend bool operator==(const GradedVerdict&, const GradedVerdict&) = default;
};

struct GradedHarnessOptions {
  int trials = 20;
  std::uint64_t seed = 0x5eedULL;
  int coefficient_bound = 9;
  /// Cross-check against exhaustive Aut enumeration when the coefficient
  /// ring is finite and the search fits this budget (0 disables).
  std::uint64_t exhaustive_budget = 1u << 16;
  Execution exec = Execution::Parallel;
};

GradedVerdict graded_tower_verdict(const GradedPresentation& P, int lo, int hi,
                                   const GradedHarnessOptions& options = {});

/// Random graded automorphism at level j that respects the relations
/// (rejection sampling; falls back to the identity).
FilteredMap random_graded_automorphism(const GradedPresentation& P, int j, std::uint64_t seed, int bound = 9);

}  // namespace lforge
