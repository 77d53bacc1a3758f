#include <gtest/gtest.h>

#include <random>

#include "lforge/errors.hpp"
#include "lforge/filtered_map.hpp"
#include "lforge/polynomial_io.hpp"

using namespace lforge;

namespace {

PresentationPtr two_vars(CoefficientRing ring = CoefficientRing::integers(), int trunc = 9) {
  return Presentation::make(ring, {{"x", 1, 0}, {"y", 2, 0}}, {}, trunc);
}

FilteredMap random_map(const PresentationPtr& p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::vector<TruncatedSeries> imgs;
  for (std::size_t g = 0; g < p->generator_count(); ++g) {
    std::vector<Term> terms;
    for (int e1 = 0; e1 < 4; ++e1)
      for (int e2 = 0; e2 < 3; ++e2) {
        Monomial m;
        m[0] = static_cast<std::uint32_t>(e1);
        m[1] = static_cast<std::uint32_t>(e2);
        if (p->weight(m) >= p->generators()[g].filtration) terms.push_back({m, c(rng)});
      }
    imgs.push_back(TruncatedSeries::from_terms(p, std::move(terms)));
  }
  return FilteredMap(p, std::move(imgs));
}

}  // namespace

TEST(FilteredMap, SubstitutionExamples) {
  auto p = Presentation::make(CoefficientRing::integers(), {{"x", 1, 0}}, {}, 4);
  FilteredMap s(p, {parse_series(p, "x + x^2")});
  EXPECT_EQ(s.apply(parse_series(p, "x^2")).to_string(), "2*x^3 + x^2");
  const auto f = parse_series(p, "3 + x - 7*x^3");
  EXPECT_EQ(FilteredMap::identity(p).apply(f), f);

  auto q = Presentation::make(CoefficientRing::integers(), {{"x", 1, 0}}, {}, 5);
  FilteredMap t(q, {parse_series(q, "-x + x^3")});
  const auto twice = t.after(t);
  EXPECT_EQ(twice.image(0), t.apply(t.apply(parse_series(q, "x"))));
  EXPECT_EQ(twice.image(0).to_string(), "-2*x^3 + x");
}

TEST(FilteredMap, RejectsFiltrationDrop) {
  auto p = two_vars();
  EXPECT_THROW(FilteredMap(p, {parse_series(p, "x"), parse_series(p, "x + y")}), FiltrationViolation);
  EXPECT_THROW(FilteredMap(p, {parse_series(p, "x")}), InputError);
}

TEST(FilteredMap, RejectsRelationViolation) {
  const auto Z = CoefficientRing::integers();
  auto scratch = Presentation::make(Z, {{"x", 1, 1}, {"y", 1, 1}}, {}, 5, Grading::Graded);
  auto p = Presentation::make(Z, {{"x", 1, 1}, {"y", 1, 1}}, {parse_polynomial_terms(*scratch, "x*y")}, 5,
                              Grading::Graded);
  EXPECT_NO_THROW(FilteredMap(p, {parse_series(p, "y"), parse_series(p, "x")}));
  EXPECT_THROW(FilteredMap(p, {parse_series(p, "x"), parse_series(p, "x + y")}), RelationViolation);
  // Graded maps must be homogeneous.
  auto g = Presentation::make(Z, {{"x", 2, 2}}, {}, 9, Grading::Graded);
  EXPECT_THROW(FilteredMap(g, {parse_series(g, "x + x^2")}), FiltrationViolation);
}

TEST(FilteredMap, HomomorphismAndNaturality) {
  auto p = two_vars();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 25; ++t) {
    const auto s = random_map(p, rng), u = random_map(p, rng);
    const auto a = parse_series(p, "1 + 2*x - y + x*y"), b = parse_series(p, "x^2 - 3*y^2 + 5");
    EXPECT_EQ(s.apply(a * b), s.apply(a) * s.apply(b));
    EXPECT_EQ(s.apply(a + b), s.apply(a) + s.apply(b));
    // (s after u)(f) = s(u(f))
    EXPECT_EQ(s.after(u).apply(a), s.apply(u.apply(a)));
    // Reduction commutes with substitution.
    EXPECT_EQ(s.apply(a).reduce_truncation(5), s.reduce_truncation(5).apply(a.reduce_truncation(5)));
    EXPECT_EQ(s.reduce_truncation(5).lift_truncation(9).reduce_truncation(5), s.reduce_truncation(5));
  }
}

TEST(FilteredMap, KOCoefficientsStayFixed) {
  auto p = Presentation::make(CoefficientRing::ko_even(), {{"x", 4, 4}}, {}, 13);
  FilteredMap neg(p, {parse_series(p, "-x")});
  EXPECT_EQ(neg.apply(parse_series(p, "4*xi*x + 2*bR*x^2")).to_string(), "2*bR*x^2 - 4*xi*x");
  EXPECT_EQ(neg.to_string(), "x -> -x");
}
