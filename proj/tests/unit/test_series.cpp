#include <gtest/gtest.h>

#include "lforge/errors.hpp"
#include "lforge/filtered_map.hpp"
#include "lforge/polynomial_io.hpp"

using namespace lforge;

namespace {

PresentationPtr one_var(int weight, int trunc, CoefficientRing ring = CoefficientRing::integers(),
                        const std::string& name = "x") {
  return Presentation::make(ring, {{name, weight, weight}}, {}, trunc);
}

}  // namespace

TEST(Series, AddCancelsAndKeepsTruncation) {
  auto p = one_var(1, 4);
  EXPECT_TRUE((parse_series(p, "x") + parse_series(p, "-x")).is_zero());
  EXPECT_EQ((parse_series(p, "1 + x") + parse_series(p, "x^2")).to_string(), "x^2 + x + 1");
  auto p2 = one_var(1, 4, CoefficientRing::integers_mod(2));
  EXPECT_TRUE((parse_series(p2, "x") + parse_series(p2, "x")).is_zero());
}

TEST(Series, MultiplyTruncates) {
  auto p = one_var(1, 3);
  EXPECT_EQ((parse_series(p, "1 + x") * parse_series(p, "1 - x")).to_string(), "-x^2 + 1");
  auto q = one_var(4, 9);
  auto x = parse_series(q, "x");
  EXPECT_TRUE((x * x * x).is_zero());
}

TEST(Series, KOEvenRewrite) {
  auto p = one_var(4, 12, CoefficientRing::ko_even());
  auto f = parse_series(p, "xi*x");
  EXPECT_EQ((f * f).to_string(), "4*bR*x^2");
  EXPECT_EQ(*parse_series(p, "bR*x^2").filtration(), 8);
}

TEST(Series, SubstituteBinomial) {
  auto p = one_var(1, 4);
  FilteredMap m(p, {parse_series(p, "x + x^2")});
  EXPECT_EQ(m.apply(parse_series(p, "x^2")).to_string(), "2*x^3 + x^2");
}

TEST(Series, ReduceTruncation) {
  auto p = one_var(4, 16, CoefficientRing::integers(), "v");
  EXPECT_EQ(parse_series(p, "v^3 + 6v^2 + 9v").reduce_truncation(9).to_string(), "6*v^2 + 9*v");
}

TEST(Series, ParseErrorColumn) {
  auto p = one_var(1, 4);
  try {
    parse_series(p, "x^^2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 3u);
  }
}
