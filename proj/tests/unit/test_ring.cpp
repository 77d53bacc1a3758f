#include <gtest/gtest.h>

#include <random>

#include "lforge/errors.hpp"
#include "lforge/polynomial_io.hpp"
#include "lforge/series.hpp"

using namespace lforge;

namespace {

TruncatedSeries random_series(const PresentationPtr& p, std::mt19937_64& rng, int max_exp = 4) {
  std::uniform_int_distribution<int> coef(-6, 6), ex(0, max_exp);
  std::vector<Term> terms;
  const std::size_t slots = p->slot_count();
  for (int t = 0; t < 6; ++t) {
    Monomial m;
    for (std::size_t s = 0; s < p->generator_count(); ++s) m[s] = static_cast<std::uint32_t>(ex(rng));
    for (std::size_t s = p->generator_count(); s < slots; ++s) m[s] = static_cast<std::uint32_t>(ex(rng) % 2);
    terms.push_back({m, coef(rng)});
  }
  return TruncatedSeries::from_terms(p, std::move(terms));
}

}  // namespace

TEST(CoefficientRing, ParseAndPrint) {
  for (const char* s : {"Z", "Z/4", "GF(3)", "KOEven"}) EXPECT_EQ(CoefficientRing::parse(s).to_string(), s);
  EXPECT_THROW(CoefficientRing::parse("Q"), InputError);
  EXPECT_THROW(CoefficientRing::parse("GF(4)"), InputError);
  EXPECT_THROW(CoefficientRing::parse("Z/1"), InputError);
}

TEST(CoefficientRing, UnitsAndInverses) {
  const auto Z = CoefficientRing::integers();
  EXPECT_TRUE(Z.is_unit(-1));
  EXPECT_FALSE(Z.is_unit(2));
  EXPECT_THROW(Z.inverse(2), NotInvertible);
  const auto Z8 = CoefficientRing::integers_mod(8);
  EXPECT_TRUE(Z8.is_unit(3));
  EXPECT_EQ(Z8.inverse(3), 3);
  EXPECT_FALSE(Z8.is_unit(6));
  mpz_class v = -3;
  Z8.normalize(v);
  EXPECT_EQ(v, 5);
  EXPECT_TRUE(Z8.divisible(6, 2));
  EXPECT_FALSE(Z8.divisible(3, 2));
  EXPECT_TRUE(CoefficientRing::prime_field(5).is_field());
  EXPECT_FALSE(CoefficientRing::ko_even().is_finite());
}

TEST(Presentation, RejectsBadInput) {
  const auto Z = CoefficientRing::integers();
  EXPECT_THROW(Presentation::make(Z, {{"x", 0, 0}}, {}, 4), InputError);
  EXPECT_THROW(Presentation::make(Z, {{"x", 1, 0}, {"x", 1, 0}}, {}, 4), InputError);
  // x^2 - x mixes weights.
  auto scratch = Presentation::make(Z, {{"x", 1, 0}}, {}, 4);
  EXPECT_THROW(Presentation::make(Z, {{"x", 1, 0}}, {parse_polynomial_terms(*scratch, "x^2 - x")}, 4), InputError);
  // Leading coefficient 2 is not a unit over Z.
  EXPECT_THROW(Presentation::make(Z, {{"x", 1, 0}}, {parse_polynomial_terms(*scratch, "2*x^2")}, 4), InputError);
}

TEST(Presentation, RelationNormalForm) {
  const auto Z = CoefficientRing::integers();
  auto scratch = Presentation::make(Z, {{"x", 1, 1}, {"y", 1, 1}}, {}, 6);
  auto p = Presentation::make(Z, {{"x", 1, 1}, {"y", 1, 1}}, {parse_polynomial_terms(*scratch, "x^2 - y^2")}, 6);
  const auto f = parse_series(p, "x^2");
  EXPECT_EQ(f, parse_series(p, "y^2"));
  EXPECT_TRUE((parse_series(p, "x^3") - parse_series(p, "x*y^2")).is_zero());
}

TEST(Series, FiltrationExamples) {
  auto ko = Presentation::make(CoefficientRing::ko_even(), {{"x", 4, 4}}, {}, 12);
  EXPECT_EQ(*parse_series(ko, "bR*x^2").filtration(), 8);
  auto p = Presentation::make(CoefficientRing::integers(), {{"x", 4, 4}}, {}, 13);
  EXPECT_FALSE(TruncatedSeries::zero(p).filtration().has_value());
  EXPECT_EQ(*parse_series(p, "x^3").filtration(), 12);
}

TEST(Series, ReduceExamples) {
  auto p = Presentation::make(CoefficientRing::integers(), {{"v", 4, 0}}, {}, 13);
  EXPECT_EQ(parse_series(p, "v + v^2").reduce_truncation(8).to_string(), "v");
  const auto f = parse_series(p, "v^3 + 6*v^2 + 9*v");
  EXPECT_EQ(f.reduce_truncation(13), f);
  EXPECT_EQ(f.reduce_truncation(9).to_string(), "6*v^2 + 9*v");
  EXPECT_THROW(f.reduce_truncation(14), TruncationError);
}

class RingAxioms : public ::testing::TestWithParam<std::string> {};

TEST_P(RingAxioms, HoldOnRandomSeries) {
  const auto ring = CoefficientRing::parse(GetParam());
  const int xdeg = ring.kind() == RingKind::KOEven ? 4 : 1;
  auto p = Presentation::make(ring, {{"x", xdeg, xdeg}, {"y", 2 * xdeg, 2 * xdeg}}, {}, 7 * xdeg);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const auto a = random_series(p, rng), b = random_series(p, rng), c = random_series(p, rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a * TruncatedSeries::one(p), a);
    EXPECT_EQ(a.pow(3), a * a * a);
    // Truncation is a ring map.
    const int j = 4 * xdeg;
    EXPECT_EQ((a * b).reduce_truncation(j), a.reduce_truncation(j) * b.reduce_truncation(j));
    EXPECT_EQ((a + b).reduce_truncation(j), a.reduce_truncation(j) + b.reduce_truncation(j));
  }
}

INSTANTIATE_TEST_SUITE_P(Rings, RingAxioms, ::testing::Values("Z", "Z/4", "GF(3)", "KOEven"),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::erase_if(n, [](char ch) { return !std::isalnum(static_cast<unsigned char>(ch)); });
                           return n;
                         });

TEST(Series, DenseAndSparsePathsAgree) {
  // Many generators push the product off the dense accumulator.
  std::vector<int> w(8, 1);
  auto p = Presentation::free(CoefficientRing::integers(), w, 6);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_series(p, rng, 2), b = random_series(p, rng, 2);
    TruncatedSeries naive = TruncatedSeries::zero(p);
    for (const auto& s : a.terms())
      for (const auto& u : b.terms()) naive += TruncatedSeries::monomial(p, s.monomial * u.monomial, s.coeff * u.coeff);
    EXPECT_EQ(a * b, naive);
  }
}

TEST(Series, DividedExact) {
  auto p = Presentation::make(CoefficientRing::integers(), {{"x", 1, 0}}, {}, 5);
  EXPECT_EQ(parse_series(p, "4*x + 6*x^2").divided_exact(2)->to_string(), "3*x^2 + 2*x");
  EXPECT_FALSE(parse_series(p, "4*x + 3*x^2").divided_exact(2).has_value());
}
