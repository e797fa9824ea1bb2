#include <gtest/gtest.h>

#include <numeric>

#include "sgps/sgps.hpp"

using namespace sgps;

TEST(Numeric, ParseAndPrintRationals) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(to_string(parse_rational("6/-4")), "-3/2");
  EXPECT_EQ(to_string(Rational(BigInt(-6), BigInt(4))), "-3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("0.5"), Error);
}

TEST(Numeric, BigIntegersStayExact) {
  BigInt big = ipow(BigInt(2), 200);
  Rational q(big + 1, big);
  EXPECT_EQ(q - 1, Rational(BigInt(1), big));
  EXPECT_EQ(to_string(ipow(BigInt(10), 30)), "1" + std::string(30, '0'));
}

TEST(Numeric, ModularHelpers) {
  EXPECT_EQ(mod_floor(-7, 5), 3);
  for (std::int64_t n : {2, 9, 15, 97})
    for (std::int64_t a = 1; a < n; ++a) {
      std::int64_t x = 0;
      std::int64_t g = ext_gcd(a, n, x);
      EXPECT_EQ(g, std::gcd(a, n));
      EXPECT_EQ(mul_mod(mod_floor(x, n), a, n), g % n);
    }
  EXPECT_TRUE(is_prime(13));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
}

TEST(CoefficientFieldTest, ReductionModP) {
  CoefficientField f(5);
  EXPECT_EQ(f.normalize(Rational(1, 2)), Rational(3));
  EXPECT_EQ(f.normalize(Rational(-1)), Rational(4));
  EXPECT_THROW(f.normalize(Rational(1, 5)), Error);
  EXPECT_THROW(CoefficientField(6), Error);
  EXPECT_EQ(CoefficientField::rationals().normalize(Rational(7, 3)), Rational(7, 3));
}

namespace {

void expect_ring_axioms_exhaustive(const RingHandle& r) {
  auto u = r->universe();
  for (const auto& a : u) {
    EXPECT_EQ(a + r->zero(), a);
    EXPECT_EQ(a * r->one(), a);
    EXPECT_EQ(r->one() * a, a);
    EXPECT_TRUE((a + (-a)).is_zero());
    for (const auto& b : u) {
      EXPECT_EQ(a + b, b + a);
      for (const auto& c : u) {
        ASSERT_EQ((a * b) * c, a * (b * c)) << r->name();
        ASSERT_EQ(a * (b + c), a * b + a * c) << r->name();
      }
    }
  }
}

}  // namespace

TEST(Zmod, AxiomsExhaustive) {
  for (int n : {2, 4, 6, 9}) expect_ring_axioms_exhaustive(make_zmod(n));
}

TEST(Zmod, UnitsMatchGcdOracle) {
  for (int n : {2, 6, 12, 25, 30}) {
    auto r = make_zmod(n);
    for (int a = 0; a < n; ++a) {
      auto v = is_unit(r->integer(a));
      bool expected = std::gcd(a, n) == 1;
      EXPECT_EQ(v.decision == Decision::yes, expected) << a << " mod " << n;
      if (expected) {
        ASSERT_TRUE(v.inverse.has_value());
        EXPECT_TRUE((*v.inverse * r->integer(a)).is_one());
      }
    }
  }
}

TEST(Zmod, NegativeIntegersWrap) {
  auto r = make_zmod(7);
  EXPECT_EQ(r->integer(-1), r->integer(6));
  EXPECT_EQ(r->universe().size(), 7u);
}

TEST(GaloisField, AxiomsExhaustive) {
  expect_ring_axioms_exhaustive(make_gf(2, 2));
  expect_ring_axioms_exhaustive(make_gf(3, 2));
}

TEST(GaloisField, EveryNonzeroElementIsInvertible) {
  for (auto [p, k] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{5, 2}, std::pair{7, 1}}) {
    auto f = make_gf(p, k);
    auto& gf = dynamic_cast<const GaloisFieldRing&>(*f);
    std::uint64_t q = static_cast<std::uint64_t>(gf.order());
    for (const auto& a : f->universe()) {
      if (a.is_zero()) continue;
      // Lagrange: a^(q-1) = 1
      EXPECT_TRUE(a.pow(q - 1).is_one()) << a.str();
      auto v = is_unit(a);
      ASSERT_EQ(v.decision, Decision::yes);
      EXPECT_EQ(*v.inverse, a.pow(q - 2));
    }
  }
}

TEST(GaloisField, GF4GeneratorSatisfiesDefiningPolynomial) {
  auto f = make_gf(2, 2);
  auto w = dynamic_cast<const GaloisFieldRing&>(*f).generator();
  EXPECT_TRUE((w * w + w + f->one()).is_zero());
  EXPECT_EQ(f->characteristic(), 2);
}

TEST(GaloisField, RejectsBadParameters) {
  EXPECT_THROW(make_gf(4), Error);
  EXPECT_THROW(make_gf(2, 0), Error);
  EXPECT_THROW(make_gf(2, 20), Error);
}

TEST(Frobenius, IsABijectiveEndomorphismOfPeriodK) {
  auto f = make_gf(2, 3);
  auto phi = make_frobenius(f);
  auto check = validate_endomorphism(*phi, 100, 1);
  EXPECT_TRUE(check.ok);
  EXPECT_TRUE(check.exhaustive);
  std::set<Element> images;
  for (const auto& a : f->universe()) {
    images.insert((*phi)(a));
    EXPECT_EQ((*phi->power(3))(a), a);
    EXPECT_EQ((*(*phi->inverse()))((*phi)(a)), a);
  }
  EXPECT_EQ(images.size(), 8u);
  EXPECT_TRUE(phi->power(3)->is_identity());
  EXPECT_THROW(make_frobenius(make_zmod(6)), Error);
}

TEST(Integers, UnitsAndArithmetic) {
  auto z = make_integers();
  EXPECT_EQ(is_unit(z->integer(-1)).decision, Decision::yes);
  EXPECT_EQ(is_unit(z->integer(2)).decision, Decision::no);
  EXPECT_EQ((z->integer(BigInt(1) << 100) * z->integer(0)), z->zero());
  EXPECT_FALSE(z->enumerable());
  EXPECT_THROW(z->universe(), Error);
}

TEST(Endomorphisms, ValidationFindsCounterexample) {
  auto r = make_zmod(6);
  // x -> 2x is additive but not multiplicative on Z/6
  auto doubling = std::make_shared<TableEndo>(r, [&] {
    std::map<Payload, Payload> t;
    for (const auto& a : r->universe()) t.emplace(a.payload(), (a + a).payload());
    return t;
  }(), "double");
  auto check = validate_endomorphism(*doubling, 100, 3);
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.law, "alpha(1) = 1");
  ASSERT_FALSE(check.counterexample.empty());
  EXPECT_THROW(make_zmod(1), Error);
}

TEST(Endomorphisms, RigidityOfZmodIdentityMatchesNilpotentOracle) {
  // alpha = id is rigid exactly when Z/n has no nonzero a with a^2 = 0,
  // i.e. when n is square-free.
  for (int n = 2; n <= 30; ++n) {
    auto r = make_zmod(n);
    bool square_free = true;
    for (int p = 2; p * p <= n; ++p)
      if (n % (p * p) == 0) square_free = false;
    auto v = is_rigid(r, identity_endo(r));
    EXPECT_EQ(v.verdict == Verdict::holds, square_free) << n;
    if (!square_free) {
      ASSERT_TRUE(v.witness.has_value());
      EXPECT_TRUE((*v.witness * *v.witness).is_zero());
    }
  }
}
