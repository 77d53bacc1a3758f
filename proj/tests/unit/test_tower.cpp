#include <gtest/gtest.h>

#include <cstdlib>

#include "lforge/errors.hpp"
#include "lforge/polynomial_io.hpp"
#include "lforge/tower.hpp"

using namespace lforge;

namespace {

GroupMap identity_map(const FiniteGroup& g) {
  GroupMap f(g.order());
  for (std::uint32_t i = 0; i < g.order(); ++i) f[i] = i;
  return f;
}

FiniteGroupTower constant(const FiniteGroup& g, std::size_t depth, bool zero) {
  std::vector<FiniteGroup> levels(depth + 1, g);
  std::vector<GroupMap> maps(depth, zero ? GroupMap(g.order(), 0) : identity_map(g));
  return FiniteGroupTower(levels, maps);
}

PresentationPtr quotient(unsigned long p, int power) {
  auto ring = CoefficientRing::prime_field(p);
  auto scratch = Presentation::make(ring, {{"x", 1, 0}}, {}, power);
  return Presentation::make(ring, {{"x", 1, 0}}, {parse_polynomial_terms(*scratch, "x^" + std::to_string(power))}, power);
}

}  // namespace

TEST(FiniteGroup, Constructions) {
  EXPECT_EQ(FiniteGroup::cyclic(5).order(), 5u);
  EXPECT_EQ(FiniteGroup::symmetric(3).order(), 6u);
  EXPECT_EQ(FiniteGroup::symmetric(4).order(), 24u);
  EXPECT_EQ(FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, 3).order(), 6u);
  EXPECT_EQ(FiniteGroup::from_matrices({IntMatrix{{1, 1}, {0, 1}}}, 5).order(), 5u);
  EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {1, 1}}), InputError);
  const auto S3 = FiniteGroup::symmetric(3);
  for (std::uint32_t a = 0; a < 6; ++a) EXPECT_EQ(S3.mul(a, S3.inv(a)), 0u);
}

TEST(FiniteGroup, Homomorphisms) {
  const auto Z4 = FiniteGroup::cyclic(4), Z2 = FiniteGroup::cyclic(2);
  const auto red = extend_homomorphism(Z4, Z2, {1}, {1});
  ASSERT_TRUE(red);
  EXPECT_TRUE(is_homomorphism(Z4, Z2, *red));
  EXPECT_FALSE(extend_homomorphism(Z2, Z4, {1}, {1}).has_value());
  EXPECT_THROW(FiniteGroupTower({Z2, Z4}, {GroupMap{0, 1, 1, 0}}), InputError);
}

TEST(Lim1, ConstantTowers) {
  EXPECT_EQ(lim1_orbits(constant(FiniteGroup::cyclic(2), 5, false)).orbit_count, 1u);
  const auto zero = lim1_orbits(constant(FiniteGroup::cyclic(2), 5, true));
  EXPECT_EQ(zero.orbit_count, 1u);
  EXPECT_EQ(zero.basepoint_orbit_size, 64u);
  EXPECT_EQ(lim1_orbits(constant(FiniteGroup::symmetric(3), 3, false)).orbit_count, 1u);
}

TEST(Lim1, SurjectivityVerdicts) {
  EXPECT_TRUE(surjectivity_verdict(constant(FiniteGroup::cyclic(3), 3, false)).surjective);
  const auto Z4 = FiniteGroup::cyclic(4), Z2 = FiniteGroup::cyclic(2);
  const auto red = *extend_homomorphism(Z4, Z2, {1}, {1});
  // Z/2 <- Z/4 (reduction) <- Z/2 (zero) <- Z/4 (reduction)
  FiniteGroupTower t({Z2, Z4, Z2, Z4}, {red, GroupMap(2, 0), red});
  const auto v = surjectivity_verdict(t);
  EXPECT_FALSE(v.surjective);
  EXPECT_EQ(v.failing_level, 1u);
  EXPECT_EQ(lim1_orbits(t).orbit_count, 1u);
}

TEST(Lim1, SerialParallelAndBudget) {
  const auto t = constant(FiniteGroup::symmetric(3), 3, false);
  EXPECT_EQ(lim1_orbits(t, Execution::Serial), lim1_orbits(t, Execution::Parallel));
  EXPECT_THROW(lim1_orbits(t, Execution::Serial, 100), BudgetExceeded);
}

TEST(Lim1, BudgetFromEnvironment) {
  ::setenv("LAMBDA_FORGE_BUDGET", "1000", 1);
  EXPECT_EQ(enumeration_budget(), 1000u);
  ::unsetenv("LAMBDA_FORGE_BUDGET");
  EXPECT_EQ(enumeration_budget(), 1u << 22);
}

TEST(Aut, SmallOrders) {
  EXPECT_EQ(aut_group_of_truncation(quotient(2, 2)).group.order(), 1u);
  EXPECT_EQ(aut_group_of_truncation(quotient(3, 2)).group.order(), 2u);
  EXPECT_EQ(aut_group_of_truncation(quotient(2, 3)).group.order(), 2u);
  const auto a = aut_group_of_truncation(quotient(3, 3), 0, Execution::Serial);
  const auto b = aut_group_of_truncation(quotient(3, 3), 0, Execution::Parallel);
  EXPECT_EQ(a.group.order(), 6u);
  EXPECT_EQ(a.elements, b.elements);
}

TEST(Aut, TowerOfTruncations) {
  auto P = Presentation::make(CoefficientRing::prime_field(2), {{"x", 1, 0}}, {}, 5);
  const auto T = aut_tower(P, {2, 3, 4, 5});
  EXPECT_TRUE(surjectivity_verdict(T).surjective);
  EXPECT_EQ(lim1_orbits(T).orbit_count, 1u);
}

TEST(Aut, ModuleBasisAndBijectivity) {
  auto P = quotient(2, 3);
  EXPECT_EQ(module_basis(*P).size(), 3u);
  FilteredMap s(P, {parse_series(P, "x + x^2")});
  EXPECT_TRUE(is_bijective_exhaustive(s));
  FilteredMap z(P, {parse_series(P, "x^2")});
  EXPECT_FALSE(is_bijective_exhaustive(z));
}
