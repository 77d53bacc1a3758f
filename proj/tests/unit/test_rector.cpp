#include <gtest/gtest.h>

#include <random>

#include "lforge/errors.hpp"
#include "lforge/polynomial_io.hpp"
#include "lforge/rector_bs3.hpp"

using namespace lforge;

namespace {

std::string psi_text(const KModelStructure& s, int k) { return s.adams.at(k).image(0).to_string(); }

}  // namespace

TEST(Rector, ChebyshevPolynomials) {
  auto s = chebyshev_structure({2, 3, 5, 7}, 8);
  EXPECT_EQ(psi_text(s, 2), "v^2 + 4*v");
  EXPECT_EQ(psi_text(s, 3), "v^3 + 6*v^2 + 9*v");
  EXPECT_EQ(psi_text(s, 5), "v^5 + 10*v^4 + 35*v^3 + 50*v^2 + 25*v");
  EXPECT_EQ(psi_text(s, 7), "v^7 + 14*v^6 + 77*v^5 + 210*v^4 + 294*v^3 + 196*v^2 + 49*v");
}

TEST(Rector, SignTable) {
  const std::map<int, std::pair<int, int>> expected{
      {1, {1, 1}}, {5, {1, -1}}, {7, {-1, 1}}, {11, {-1, -1}}};
  for (const auto& [r, s] : expected) {
    EXPECT_EQ(signs_from_a(r), s);
    EXPECT_EQ(signs_from_a(-r), s);
    EXPECT_EQ(signs_from_a(24 - r), s);
    EXPECT_EQ(signs_from_a(r + 48), s);
  }
  EXPECT_THROW(signs_from_a(3), InputError);
  EXPECT_THROW(signs_from_a(0), InputError);
}

TEST(Rector, AInvariantReadsSlot) {
  auto ko = KOModelStructure::with_a(7);
  auto a = a_invariant(ko);
  EXPECT_EQ(a.raw, 7);
  EXPECT_EQ(a.canonical, 7);
  EXPECT_EQ(a_invariant(KOModelStructure::with_a(-1)).canonical, 1);
  EXPECT_EQ(a_invariant(KOModelStructure::with_a(19)).canonical, 5);
  EXPECT_THROW(KOModelStructure::with_a(6), MalformedStructure);
  auto p = KOModelStructure::default_presentation();
  EXPECT_THROW(KOModelStructure::make(parse_series(p, "2*xi*x + 2*bR*x^2")), ShapeError);
  EXPECT_THROW(KOModelStructure::make(parse_series(p, "4*xi*x + bR*x^2")), ShapeError);
  // Terms above filtration 8 are ignored.
  auto wide = KOModelStructure::default_presentation(17);
  EXPECT_EQ(a_invariant(KOModelStructure::make(parse_series(wide, "4*xi*x + 2*bR*x^2 + 5*xi*bR*x^3"))).raw, 1);
  EXPECT_THROW(KOModelStructure::make(parse_series(p, "4*xi*x + 2*bR*x^2 + x")), ShapeError);
}

TEST(Rector, AInvariantInvariantUnderNegation) {
  // x -> -x sends xi x to -xi x and bR x^2 to itself, so psi^2(xi x) becomes
  // 4 xi x - 2a bR x^2 and a goes to -a.
  for (long a : {1L, 5L, 7L, 11L, 13L, -23L, 35L}) {
    auto x = KOModelStructure::with_a(a);
    auto p = x.presentation;
    FilteredMap neg(p, {parse_series(p, "-x")});
    auto flipped = KOModelStructure::make(neg.apply(x.psi2_xi_x).scaled(-1));
    EXPECT_EQ(a_invariant(flipped).raw, -a);
    EXPECT_EQ(signs_from_a(a_invariant(flipped).canonical), signs_from_a(a_invariant(x).canonical));
  }
}

TEST(Rector, TransportExamples) {
  EXPECT_EQ(transport_a(1, 4, 1), 1);
  EXPECT_EQ(transport_a(-1, 0, 5), 19);
  EXPECT_THROW(transport_a(1, 2, 1), InvalidTransport);
  EXPECT_THROW(transport_a(0, 4, 1), InvalidTransport);
}

TEST(Rector, TransportLawRandom) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> pick(-1000, 1000);
  const long units[] = {1, 5, 7, 11, 13, 17, 19, 23};
  for (int t = 0; t < 100; ++t) {
    const int eps = (rng() & 1) ? 1 : -1;
    const long s2 = 4 * pick(rng);
    const long ay = units[rng() % 8] + 24 * pick(rng);
    const int r = transport_a(eps, s2, ay);
    const long ry = ((ay % 24) + 24) % 24;
    EXPECT_TRUE(r == ry || r == (24 - ry) % 24);
    const long bad = s2 + 1 + static_cast<long>(rng() % 3);
    EXPECT_THROW(transport_a(eps, bad, ay), InvalidTransport);
  }
}

TEST(Rector, KOIntertwiner) {
  auto one = KOModelStructure::with_a(1), twenty_five = KOModelStructure::with_a(25);
  auto r = find_ko_intertwiner(twenty_five, one);
  ASSERT_TRUE(r.exists);
  EXPECT_EQ(r.epsilon, 1);
  EXPECT_EQ(r.sigma2, 4);
  auto minus = find_ko_intertwiner(KOModelStructure::with_a(23), one);
  ASSERT_TRUE(minus.exists);
  EXPECT_EQ(minus.epsilon, -1);
  EXPECT_FALSE(find_ko_intertwiner(KOModelStructure::with_a(7), one).exists);
  // a = 13 differs from 1 by 12, so sigma2 = 2 is not divisible by 4.
  EXPECT_FALSE(find_ko_intertwiner(KOModelStructure::with_a(13), one).exists);
}

TEST(Rector, OddSignChebyshev) {
  auto s = chebyshev_structure({2, 3, 5, 7}, 8);
  for (int p : {3, 5, 7}) EXPECT_EQ(odd_sign(s, p), 1) << p;
  auto prof = rector_profile(&s, nullptr);
  EXPECT_EQ(prof.to_string(), "(X/3)=+1 (X/5)=+1 (X/7)=+1");
  auto ko = KOModelStructure::with_a(1);
  auto s2 = chebyshev_structure({2, 3, 5}, 6);
  EXPECT_EQ(rector_profile(&s2, &ko).to_string(), "a=1 (mod 24); (X/2)=+1 (X/3)=+1 (X/5)=+1");
  auto ko7 = KOModelStructure::with_a(7);
  EXPECT_EQ(rector_profile(nullptr, &ko7).to_string(), "a=7 (mod 24); (X/2)=-1 (X/3)=+1");
  auto ko5 = KOModelStructure::with_a(5);
  EXPECT_THROW(rector_profile(&s2, &ko5), MalformedStructure);
}

TEST(Rector, OddSignExplicit) {
  auto p = KModelStructure::default_presentation(6);
  AdamsFamily A(p);
  A.set_images(3, {parse_series(p, "v^3 + 3*v^2 + 9*v")});
  auto s = KModelStructure::make(A, {3});
  EXPECT_EQ(odd_sign(s, 3), -1);
  AdamsFamily B(p);
  B.set_images(3, {parse_series(p, "v^3 + 9*v")});
  EXPECT_THROW(odd_sign(KModelStructure::make(B, {3}), 3), MalformedStructure);
  AdamsFamily C(p);
  C.set_images(3, {parse_series(p, "v^3 + 4*v")});
  EXPECT_THROW(KModelStructure::make(C, {3}), MalformedStructure);
  auto small = chebyshev_structure({3, 5}, 1);
  EXPECT_THROW(odd_sign(small, 3), MalformedStructure);
}

TEST(Rector, ConstructFourSignVectors) {
  std::vector<KModelStructure> built;
  for (int s3 : {1, -1})
    for (int s5 : {1, -1}) {
      auto s = construct_structure({{3, s3}, {5, s5}}, {3, 5}, 6);
      EXPECT_EQ(odd_sign(s, 3), s3);
      EXPECT_EQ(odd_sign(s, 5), s5);
      EXPECT_TRUE(certify(s.adams, 5, 6).passed);
      built.push_back(std::move(s));
    }
  for (std::size_t i = 0; i < built.size(); ++i)
    for (std::size_t j = 0; j < built.size(); ++j) {
      auto r = find_intertwiner(built[i], built[j], 6);
      EXPECT_EQ(r.kind == Intertwiner::Kind::Isomorphic, i == j) << i << "," << j;
      if (i != j) {
        EXPECT_EQ(r.kind, Intertwiner::Kind::Distinct);
        ASSERT_FALSE(r.refutations.empty());
      }
    }
}

TEST(Rector, ConstructMinusThreeSlot) {
  auto s = construct_structure({{3, -1}, {5, 1}}, {2, 3, 5}, 6);
  Monomial v2;
  v2[0] = 2;
  mpz_class c = s.adams.at(3).image(0).coefficient(v2) % 9;
  if (c < 0) c += 9;
  EXPECT_EQ(c, 3);
}

TEST(Rector, ConstructUnsatisfiable) {
  // A zero box leaves only the Chebyshev-free zero coefficients.
  ConstructOptions tight;
  tight.box_factor = 0;
  try {
    construct_structure({{3, 1}}, {2, 3}, 4, tight);
    FAIL() << "expected Unsatisfiable";
  } catch (const Unsatisfiable& e) {
    EXPECT_GE(e.level(), 2);
  }
}

TEST(Rector, IntertwinerWithConjugate) {
  auto a = chebyshev_structure({2, 3, 5}, 6, 6);
  auto p = a.adams.presentation();
  auto b = conjugate(a, parse_series(p, "-v + v^2"));
  EXPECT_FALSE(b.adams == a.adams);
  auto plain = find_intertwiner(a, b, 6);
  // v -> -v reverses the orientation, so the default search refutes it.
  EXPECT_EQ(plain.kind, Intertwiner::Kind::Distinct);
  IntertwinerOptions rev;
  rev.allow_reversal = true;
  auto r = find_intertwiner(a, b, 6, rev);
  ASSERT_EQ(r.kind, Intertwiner::Kind::Isomorphic);
  EXPECT_EQ(r.coefficients[1], -1);
  auto c = conjugate(a, parse_series(p, "v + 3*v^2 - v^3"));
  auto rc = find_intertwiner(a, c, 6);
  ASSERT_EQ(rc.kind, Intertwiner::Kind::Isomorphic);
  EXPECT_EQ(rc.witness(), "v -> -v^3 + 3*v^2 + v");
  EXPECT_EQ(find_intertwiner(a, a, 6).witness(), "v -> v");
}

TEST(Rector, IntertwinerInconclusiveBelowTruncation) {
  auto a = chebyshev_structure({2, 3}, 6, 6);
  auto c = conjugate(a, parse_series(a.adams.presentation(), "v + v^4"));
  auto r = find_intertwiner(a, c, 2);
  EXPECT_EQ(r.kind, Intertwiner::Kind::Inconclusive);
  EXPECT_EQ(find_intertwiner(a, c, 6).kind, Intertwiner::Kind::Isomorphic);
}

TEST(Rector, DistinctRefutationMatchesProfile) {
  auto cheb = chebyshev_structure({3, 5}, 6, 6);
  auto minus3 = construct_structure({{3, -1}, {5, 1}}, {3, 5}, 6);
  auto r = find_intertwiner(cheb, minus3, 6);
  ASSERT_EQ(r.kind, Intertwiner::Kind::Distinct);
  EXPECT_NE(rector_profile(&cheb, nullptr), rector_profile(&minus3, nullptr));
}
