#include <gtest/gtest.h>

#include <random>

#include "lforge/errors.hpp"
#include "lforge/lift_filtered.hpp"
#include "lforge/polynomial_io.hpp"

using namespace lforge;

TEST(Lift, EnumerateJjExamples) {
  using T = ExponentTuple;
  EXPECT_EQ(enumerate_Jj({4, 8}, 16), (std::vector<T>{{4, 0}, {2, 1}, {0, 2}}));
  EXPECT_TRUE(enumerate_Jj({4}, 9).empty());
  EXPECT_EQ(enumerate_Jj({1, 1}, 3), (std::vector<T>{{3, 0}, {2, 1}, {1, 2}, {0, 3}}));
}

TEST(Lift, EnumerateJjMatchesBruteForce) {
  const std::vector<int> w{2, 3, 5};
  for (long j = 0; j <= 20; ++j) {
    std::vector<ExponentTuple> brute;
    for (unsigned a = 0; a <= 10; ++a)
      for (unsigned b = 0; b <= 7; ++b)
        for (unsigned c = 0; c <= 4; ++c)
          if (2 * a + 3 * b + 5 * c == j) brute.push_back({a, b, c});
    std::sort(brute.rbegin(), brute.rend());
    EXPECT_EQ(enumerate_Jj(w, j), brute) << j;
  }
}

TEST(Lift, BoundAndLinearBlock) {
  auto p = Presentation::free(CoefficientRing::integers(), {2, 4, 4}, 9);
  EXPECT_EQ(lifting_bound(*p), 5);
  FilteredMap s(p, {parse_series(p, "-c1 + c1^2"), parse_series(p, "c2 + 2*c3"), parse_series(p, "c3 + c1^2")});
  const auto m = linear_block(s);
  EXPECT_EQ(determinant(m), -1);
}

TEST(Lift, CertifyComputesPreimages) {
  auto p = Presentation::free(CoefficientRing::integers(), {1, 2}, 7);
  FilteredMap s(p, {parse_series(p, "c1 + 3*c1^2 - c2"), parse_series(p, "-c2 + c1^2 + c1*c2")});
  const auto cert = certify_automorphism(s);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(s.apply(cert.preimages[i]), TruncatedSeries::generator(p, i));
  EXPECT_TRUE(cert.inverse().after(s).is_identity());
  EXPECT_TRUE(s.after(cert.inverse()).is_identity());
  FilteredMap singular(p, {parse_series(p, "2*c1"), parse_series(p, "c2")});
  EXPECT_THROW(certify_automorphism(singular), NotInvertible);
}

TEST(Lift, SignAutomorphismExample) {
  auto p = Presentation::free(CoefficientRing::integers(), {4}, 9);
  auto cert = certify_automorphism(FilteredMap(p, {parse_series(p, "-c1 + 5*c1^2")}));
  auto up = lift_automorphism(cert);
  EXPECT_EQ(up.level(), 10);
  EXPECT_EQ(up.map.reduce_truncation(9), cert.map);
  for (int j = 10; j < 13; ++j) up = lift_automorphism(up);
  EXPECT_EQ(up.level(), 13);
  EXPECT_EQ(up.map.apply(up.preimages[0]), TruncatedSeries::generator(up.map.source(), 0));
}

TEST(Lift, HandCorrectionWeightOne) {
  // sigma = identity at level j = 4 over one generator of weight 1, lift
  // sigma_hat(c) = c + c^4; the correction gives g = c - c^4.
  auto p = Presentation::free(CoefficientRing::integers(), {1}, 4);
  const auto cert = certify_automorphism(FilteredMap::identity(p));
  auto q = p->with_truncation(5);
  FilteredMap chosen(q, {parse_series(q, "c1 + c1^4")});
  CorrectionData data;
  const auto up = lift_automorphism(cert, chosen, &data);
  EXPECT_EQ(up.preimages[0].to_string(), "-c1^4 + c1");
  EXPECT_EQ(data.level, 4);
  ASSERT_EQ(data.index_set.size(), 1u);
  EXPECT_EQ(data.coefficients[0][0], 1);
  EXPECT_EQ(up.map.apply(up.preimages[0]), TruncatedSeries::generator(q, 0));
}

TEST(Lift, LevelTooLowAndRelations) {
  auto p = Presentation::free(CoefficientRing::integers(), {4}, 5);
  const auto cert = certify_automorphism(FilteredMap::identity(p));
  try {
    lift_automorphism(cert);
    FAIL();
  } catch (const LevelTooLow& e) {
    EXPECT_EQ(e.bound(), 5);
  }
  EXPECT_THROW(tower_surjectivity(p, 5, 8), LevelTooLow);
}

TEST(Lift, RandomLiftsRoundTrip) {
  auto p = Presentation::free(CoefficientRing::integers(), {4, 8}, 20);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto cert = certify_automorphism(random_automorphism(p, rng));
    const auto chosen = random_lift(cert.map, rng);
    EXPECT_EQ(chosen.reduce_truncation(20), cert.map);
    const auto up = lift_automorphism(cert, chosen);
    EXPECT_EQ(up.map.reduce_truncation(20), cert.map);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(up.map.apply(up.preimages[i]), TruncatedSeries::generator(up.map.source(), i));
    // Lifting the canonical lift again is idempotent on the restriction.
    const auto again = lift_automorphism(up);
    EXPECT_EQ(again.map.reduce_truncation(21), up.map);
  }
}

TEST(Lift, HarnessSerialParallelIdentical) {
  auto p = Presentation::free(CoefficientRing::integers(), {2, 4}, 6);
  HarnessOptions s, q;
  s.trials = q.trials = 8;
  s.exec = Execution::Serial;
  q.exec = Execution::Parallel;
  const auto a = tower_surjectivity(p, 6, 14, s), b = tower_surjectivity(p, 6, 14, q);
  EXPECT_TRUE(a.surjective);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.conclusion, "SNT^ trivial (surjective tower)");
}

TEST(Lift, HarnessOverFiniteRing) {
  auto p = Presentation::free(CoefficientRing::prime_field(3), {1, 2}, 4);
  HarnessOptions o;
  o.trials = 6;
  const auto v = tower_surjectivity(p, 4, 9, o);
  EXPECT_TRUE(v.surjective) << v.failure;
}
