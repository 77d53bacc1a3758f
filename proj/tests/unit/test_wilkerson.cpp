#include <gtest/gtest.h>

#include "lforge/errors.hpp"
#include "lforge/polynomial_io.hpp"
#include "lforge/rector_bs3.hpp"
#include "lforge/wilkerson.hpp"

using namespace lforge;

namespace {

PresentationPtr line(int trunc = 9) {
  return Presentation::make(CoefficientRing::integers(), {{"x", 1, 0}}, {}, trunc);
}

}  // namespace

TEST(Wilkerson, IdentityCheck) {
  const auto s = chebyshev_structure({2, 3}, 6, 6);
  EXPECT_TRUE(check_identity(s.adams));
  auto p = s.adams.presentation();
  AdamsFamily bad(p);
  bad.set_images(1, {parse_series(p, "-v")});
  const auto r = check_identity(bad);
  EXPECT_FALSE(r);
  EXPECT_FALSE(r.witness.empty());
  auto empty = Presentation::make(CoefficientRing::integers(), {}, {}, 3);
  EXPECT_TRUE(check_identity(AdamsFamily(empty)));
}

TEST(Wilkerson, CommutationChecks) {
  const auto s = chebyshev_structure({2, 3}, 8, 6);
  EXPECT_TRUE(check_commutation(s.adams, 2, 3));
  const auto lines = adams_from_lambda(LambdaFamily::lines(line(), 8), 8);
  for (int k = 2; k <= 4; ++k)
    for (int l = 2; k * l <= 8; ++l) EXPECT_TRUE(check_commutation(lines, k, l));

  auto p = line(8);
  AdamsFamily A(p);
  A.set_images(2, {parse_series(p, "x^2")});
  A.set_images(3, {parse_series(p, "x^3 + 3*x^2")});
  A.set_images(6, {parse_series(p, "x^6")});
  const auto r = check_commutation(A, 2, 3);
  EXPECT_FALSE(r);
  EXPECT_EQ(r.name, "commutation(2,3)");
  EXPECT_THROW(check_commutation(A, 2, 2), MissingEntry);
}

TEST(Wilkerson, Frobenius) {
  const auto s = chebyshev_structure({2, 3}, 6, 6);
  EXPECT_TRUE(check_frobenius(s.adams, 2));
  EXPECT_TRUE(check_frobenius(s.adams, 3));
  auto p = line(6);
  AdamsFamily A(p);
  A.set_images(2, {parse_series(p, "x^2 + x")});
  const auto r = check_frobenius(A, 2);
  EXPECT_FALSE(r);
  EXPECT_EQ(r.name, "frobenius(2)");
}

TEST(Wilkerson, CertifyExamples) {
  const auto s = chebyshev_structure({2, 3, 5}, 7, 6);
  const auto c = certify(s.adams, 5, 6);
  EXPECT_TRUE(c.passed);
  ASSERT_TRUE(c.lambda);
  EXPECT_EQ(c.lambda->at(0, 2).to_string(), "-2*v");

  const auto lines = adams_from_lambda(LambdaFamily::lines(line(), 8), 8);
  EXPECT_TRUE(certify(lines, 7, 8).passed);

  auto p = line(6);
  AdamsFamily bad(p);
  bad.set_images(2, {parse_series(p, "x^2 + x")});
  const auto f = certify(bad, 2, 2);
  EXPECT_FALSE(f.passed);
  EXPECT_NE(f.failure.find("frobenius(2)"), std::string::npos);
}

TEST(Wilkerson, MissingEntryFailsCleanly) {
  const auto s = chebyshev_structure({2, 3}, 6, 4);
  const auto c = certify(s.adams, 5, 6);
  EXPECT_FALSE(c.passed);
  EXPECT_FALSE(c.failure.empty());
}

TEST(Wilkerson, SerialAndParallelAgree) {
  const auto s = chebyshev_structure({2, 3, 5, 7}, 8, 12);
  const auto a = certify(s.adams, 7, 12, Execution::Serial);
  const auto b = certify(s.adams, 7, 12, Execution::Parallel);
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.checks, b.checks);
  EXPECT_EQ(a.failure, b.failure);
  ASSERT_TRUE(a.lambda && b.lambda);
  EXPECT_EQ(*a.lambda, *b.lambda);
}
