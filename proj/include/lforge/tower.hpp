#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lforge/execution.hpp"
#include "lforge/filtered_map.hpp"
#include "lforge/int_matrix.hpp"

namespace lforge {

/// Enumeration cap from LAMBDA_FORGE_BUDGET, default 2^22.
std::uint64_t enumeration_budget();

/// Finite group on elements 0..n-1 with element 0 the identity.
class FiniteGroup {
 public:
  /// Validates closure, identity at index 0, inverses and associativity.
  /// `labels` may be empty.
  static FiniteGroup from_table(std::vector<std::vector<std::uint32_t>> table, std::vector<std::string> labels = {});
  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::uint32_t n);
  static FiniteGroup symmetric(unsigned degree);
  /// Closure of permutations of {0..degree-1}; (a*b)(x) = a(b(x)).
  static FiniteGroup from_permutations(const std::vector<std::vector<unsigned>>& generators, unsigned degree);
  /// Closure of invertible square matrices modulo m under multiplication.
  static FiniteGroup from_matrices(const std::vector<IntMatrix>& generators, unsigned long modulus);

  std::uint32_t order() const noexcept { return n_; }
  std::uint32_t identity() const noexcept { return 0; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  std::uint32_t inv(std::uint32_t a) const noexcept { return inverse_[a]; }
  const std::string& label(std::uint32_t a) const { return labels_[a]; }
  std::optional<std::uint32_t> find(const std::string& label) const;
  /// A small generating set, chosen greedily in index order.
  std::vector<std::uint32_t> generators() const;

 private:
  FiniteGroup() = default;
  void finish(bool check_associativity);

  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::string> labels_;
};

/// Structure map G_{n+1} -> G_n as an element table.
using GroupMap = std::vector<std::uint32_t>;

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, const GroupMap& f);
/// Extends generator images to a homomorphism; nullopt if inconsistent.
std::optional<GroupMap> extend_homomorphism(const FiniteGroup& from, const FiniteGroup& to,
                                            const std::vector<std::uint32_t>& generators,
                                            const std::vector<std::uint32_t>& images);

/// Levels G_0..G_D with maps[n]: G_{n+1} -> G_n.
class FiniteGroupTower {
 public:
  /// Throws InputError when a map is not a homomorphism.
  FiniteGroupTower(std::vector<FiniteGroup> levels, std::vector<GroupMap> maps);

  std::size_t depth() const noexcept { return levels_.size() - 1; }
  const std::vector<FiniteGroup>& levels() const noexcept { return levels_; }
  const std::vector<GroupMap>& maps() const noexcept { return maps_; }

 private:
  std::vector<FiniteGroup> levels_;
  std::vector<GroupMap> maps_;
};

struct OrbitReport {
  std::uint64_t orbit_count = 0;
  /// One representative tuple (beta_0..beta_D) per orbit, least in
  /// mixed-radix order, sorted.
  std::vector<std::vector<std::uint32_t>> representatives;
  /// Size of the orbit of the identity tuple.
  std::uint64_t basepoint_orbit_size = 0;
  bool basepoint_is_everything = false;
  friend bool operator==(const OrbitReport&, const OrbitReport&) = default;
};

/// Orbits of prod G_n under
///   beta_n -> alpha_n beta_n rho_{n+1}(alpha_{n+1})^{-1},
/// with the map above the top level trivial. Throws BudgetExceeded.
OrbitReport lim1_orbits(const FiniteGroupTower& tower, Execution exec = Execution::Parallel,
                        std::uint64_t budget = 0);

struct TowerSurjectivity {
  bool surjective = true;
  /// Least n such that maps[n]: G_{n+1} -> G_n is not onto.
  std::optional<std::size_t> failing_level;
  std::string conclusion;  // "single orbit" when surjective
};

TowerSurjectivity surjectivity_verdict(const FiniteGroupTower& tower);

/// Automorphism group of a truncation over a finite coefficient ring, by
/// exhaustive search over generator images. Labels are the printed maps.
struct AutGroup {
  FiniteGroup group;
  std::vector<FilteredMap> elements;  // element i of the group
};

AutGroup aut_group_of_truncation(const PresentationPtr& p, std::uint64_t budget = 0,
                                 Execution exec = Execution::Parallel);

/// Aut groups at the given truncations (ascending) with maps induced by
/// reduce_truncation.
FiniteGroupTower aut_tower(const PresentationPtr& p, const std::vector<int>& truncations, std::uint64_t budget = 0);

/// Monomials spanning the truncated module in normal form, by weight.
std::vector<Monomial> module_basis(const Presentation& p);

/// True iff the map is a bijection of the finite truncated module, by
/// enumerating all elements (throws BudgetExceeded above the budget).
bool is_bijective_exhaustive(const FilteredMap& sigma, std::uint64_t budget = 0);

/// Matrix of sigma on module_basis (row per basis image).
IntMatrix module_matrix(const FilteredMap& sigma, const std::vector<Monomial>& basis);

}  // namespace lforge
