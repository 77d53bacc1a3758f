#include <gtest/gtest.h>

#include "lforge/errors.hpp"
#include "lforge/graded_snt.hpp"
#include "lforge/polynomial_io.hpp"

using namespace lforge;

TEST(Graded, BoundFromRelations) {
  const auto Z = CoefficientRing::integers();
  GradedPresentation P(Z, {{"x", 2}}, {"x^3"});
  EXPECT_EQ(P.bound(), 7);
  EXPECT_EQ(GradedPresentation(Z, {{"x", 2}}, {"x^3"}, 13).bound(), 13);
  EXPECT_THROW(GradedPresentation(Z, {{"x", 2}}, {"x^3"}, 5), InputError);
  EXPECT_THROW(GradedPresentation(CoefficientRing::integers_mod(4), {{"x", 2}}, {}), InputError);
  EXPECT_THROW(GradedPresentation(Z, {{"x", 2}, {"y", 4}}, {"x^3 + y"}), InputError);
}

TEST(Graded, Ranks) {
  const auto Z = CoefficientRing::integers();
  EXPECT_EQ(truncate_graded(GradedPresentation(Z, {{"x", 2}}, {"x^3"}), 5).ranks,
            (std::map<long, long>{{0, 1}, {2, 1}, {4, 1}}));
  EXPECT_EQ(truncate_graded(GradedPresentation(Z, {{"x", 2}}, {"x^3"}), 0).ranks, (std::map<long, long>{{0, 1}}));
  EXPECT_EQ(truncate_graded(GradedPresentation(Z, {{"a", 2}, {"b", 4}}, {}), 6).ranks,
            (std::map<long, long>{{0, 1}, {2, 1}, {4, 2}, {6, 2}}));
}

TEST(Graded, SignAutomorphismLifts) {
  GradedPresentation P(CoefficientRing::integers(), {{"x", 2}}, {"x^3"}, 13);
  auto L = P.at_level(14);
  const auto lift = lift_graded_automorphism(FilteredMap(L, {parse_series(L, "-x")}), P);
  EXPECT_EQ(lift.map.source()->truncation(), 16);
  EXPECT_EQ(lift.map.image(0).to_string(), "-x");
  EXPECT_TRUE(lift.relations_vanish);
}

TEST(Graded, ScalarOverPrimeField) {
  GradedPresentation P(CoefficientRing::prime_field(3), {{"x", 2}}, {});
  EXPECT_EQ(P.bound(), 3);
  for (int j = 4; j < 9; ++j) {
    auto L = P.at_level(j);
    const auto lift = lift_graded_automorphism(FilteredMap(L, {parse_series(L, "2*x")}), P);
    EXPECT_EQ(lift.linear_determinant, 2);
  }
  auto L3 = P.at_level(3);
  EXPECT_THROW(lift_graded_automorphism(FilteredMap(L3, {parse_series(L3, "2*x")}), P), LevelTooLow);
}

TEST(Graded, SwapWithShear) {
  GradedPresentation P(CoefficientRing::integers(), {{"a", 2}, {"b", 2}}, {});
  auto L = P.at_level(10);
  const auto lift = lift_graded_automorphism(FilteredMap(L, {parse_series(L, "b"), parse_series(L, "a + b")}), P);
  EXPECT_EQ(lift.linear_determinant, -1);
  EXPECT_EQ(lift.map.reduce_truncation(11).image(1).to_string(), "a + b");
}

TEST(Graded, HarnessWithExhaustiveCrossCheck) {
  GradedPresentation P(CoefficientRing::prime_field(2), {{"x", 1}}, {});
  GradedHarnessOptions o;
  o.trials = 5;
  const auto v = graded_tower_verdict(P, 3, 8, o);
  EXPECT_TRUE(v.surjective) << v.failure;
  for (const auto& l : v.levels) {
    ASSERT_TRUE(l.exhaustive_surjective.has_value());
    EXPECT_TRUE(*l.exhaustive_surjective);
  }
  EXPECT_THROW(graded_tower_verdict(P, 2, 5, o), LevelTooLow);
}

TEST(Graded, SerialParallelIdentical) {
  GradedPresentation P(CoefficientRing::integers(), {{"x", 2}, {"y", 4}}, {"x^3"});
  GradedHarnessOptions s, q;
  s.trials = q.trials = 6;
  s.exec = Execution::Serial;
  q.exec = Execution::Parallel;
  EXPECT_EQ(graded_tower_verdict(P, 8, 12, s), graded_tower_verdict(P, 8, 12, q));
}
