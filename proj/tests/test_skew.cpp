#include <gtest/gtest.h>

#include "sgps/sgps.hpp"

using namespace sgps;

namespace {

TwistedPoly random_poly(const TwistHandle& ctx, Rng& rng, int lo, int hi) {
  std::map<std::int64_t, Element> c;
  std::uniform_int_distribution<int> deg(lo, hi), count(0, 4);
  for (int k = count(rng); k > 0; --k) c[deg(rng)] = ctx->ring()->random(rng);
  return TwistedPoly(ctx, c);
}

}  // namespace

TEST(SkewPoly, CommutationRule) {
  auto gf4 = make_gf(2, 2);
  auto ctx = make_skew_context(gf4, make_frobenius(gf4));
  Element w = dynamic_cast<const GaloisFieldRing&>(*gf4).generator();
  auto x = TwistedPoly::monomial(ctx, gf4->one(), 1);
  auto cw = TwistedPoly::constant(ctx, w);
  EXPECT_EQ(x * cw, TwistedPoly::monomial(ctx, w * w, 1));
  EXPECT_NE(x * cw, cw * x);
  EXPECT_THROW(TwistedPoly::monomial(ctx, gf4->one(), -1), Error);
}

TEST(SkewPoly, RingAxiomsOnSamples) {
  auto gf8 = make_gf(2, 3);
  for (bool laurent : {false, true}) {
    auto ctx = laurent ? make_laurent_context(gf8, make_frobenius(gf8)) : make_skew_context(gf8, make_frobenius(gf8));
    Rng rng(laurent ? 2 : 1);
    for (int i = 0; i < 300; ++i) {
      auto f = random_poly(ctx, rng, laurent ? -3 : 0, 3), g = random_poly(ctx, rng, laurent ? -3 : 0, 3),
           h = random_poly(ctx, rng, laurent ? -3 : 0, 3);
      ASSERT_EQ((f * g) * h, f * (g * h));
      ASSERT_EQ(f * (g + h), f * g + f * h);
      ASSERT_EQ((f + g) * h, f * h + g * h);
    }
  }
}

TEST(LaurentPoly, InverseMonomialsAndDegrees) {
  auto gf4 = make_gf(2, 2);
  auto ctx = make_laurent_context(gf4, make_frobenius(gf4));
  Element w = dynamic_cast<const GaloisFieldRing&>(*gf4).generator();
  auto x = TwistedPoly::monomial(ctx, gf4->one(), 1);
  auto xinv = TwistedPoly::monomial(ctx, gf4->one(), -1);
  auto one = TwistedPoly::constant(ctx, gf4->one());
  EXPECT_EQ(x * xinv, one);
  EXPECT_EQ(xinv * x, one);
  // x^-1 w x = alpha^-1(w)
  EXPECT_EQ(xinv * TwistedPoly::constant(ctx, w) * x, TwistedPoly::constant(ctx, ctx->twist(-1, w)));
  auto f = TwistedPoly(ctx, {{-2, w}, {3, gf4->one()}});
  EXPECT_EQ(degrees(f), std::make_pair(std::int64_t{-2}, std::int64_t{3}));
}

TEST(LaurentPoly, NonInvertibleTwistRejected) {
  auto alg = exterior_algebra(CoefficientField::rationals(), 5);
  try {
    make_laurent_context(alg, exterior_shift(alg));
    FAIL() << "expected NotInvertibleTwist";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertibleTwist);
  }
  EXPECT_NO_THROW(make_skew_context(alg, exterior_shift(alg)));
}

TEST(Jordan, FrobeniusCaseIsIsomorphicToBase) {
  // alpha bijective: x^-i r x^i corresponds to alpha^-i(r) in R.
  auto gf4 = make_gf(2, 2);
  auto phi = make_frobenius(gf4);
  auto a = make_jordan(gf4, phi);
  auto to_base = [&](const Element& e) {
    Element r = JordanRing::rep_of(e);
    for (std::int64_t k = 0; k < JordanRing::level_of(e); ++k) r = (*(*phi->inverse()))(r);
    return r;
  };
  auto elems = a->canonical_elements(3);
  std::set<Element> images;
  for (const auto& e : elems) images.insert(to_base(e));
  EXPECT_EQ(images.size(), 4u);
  EXPECT_EQ(elems.size(), 4u);  // normalization collapses every level to level 0
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    Element u = a->random(rng), v = a->random(rng);
    ASSERT_EQ(to_base(u * v), to_base(u) * to_base(v));
    ASSERT_EQ(to_base(u + v), to_base(u) + to_base(v));
  }
}

TEST(Jordan, NormalizeIsIdempotentAndLevelPreservingForIdentity) {
  auto z6 = make_zmod(6);
  auto a = make_jordan(z6, identity_endo(z6));
  for (std::int64_t level = 0; level <= 3; ++level)
    for (const auto& r : z6->universe()) {
      Element e = jordan_normalize(a->make_raw(level, r));
      EXPECT_EQ(jordan_normalize(e), e);
      EXPECT_EQ(JordanRing::level_of(e), 0);
      EXPECT_EQ(JordanRing::rep_of(e), r);
    }
}

TEST(Jordan, ShiftEndomorphismAndItsInverse) {
  auto gf4 = make_gf(2, 2);
  auto a = make_jordan(gf4, make_frobenius(gf4));
  JordanShiftEndo alpha(a, false);
  auto inv = alpha.inverse();
  ASSERT_TRUE(inv.has_value());
  for (const auto& e : a->canonical_elements(3)) EXPECT_EQ((**inv)(alpha(e)), e);
  EXPECT_TRUE(validate_endomorphism(alpha, 100, 2).ok);
}

TEST(Jordan, IsoIntoLaurentRingRespectsConjugation) {
  auto gf4 = make_gf(2, 2);
  auto a = make_jordan(gf4, make_frobenius(gf4));
  auto target = make_jordan_laurent_context(a);
  Element w = dynamic_cast<const GaloisFieldRing&>(*gf4).generator();
  // x^-1 w x x^-0 1 x^2 = x^-1 (w x^3)
  std::vector<ConjugateTerm> f{{1, w, 1}}, g{{0, gf4->one(), 2}};
  auto prod = conjugate_mul(*a, f, g);
  EXPECT_EQ(jordan_laurent_iso(target, prod), jordan_laurent_iso(target, f) * jordan_laurent_iso(target, g));
  EXPECT_EQ(jordan_laurent_iso(target, {{2, w, 2}}), TwistedPoly::constant(target, a->make(2, w)));
  Rng rng(10);
  std::uniform_int_distribution<int> e(0, 3);
  for (int i = 0; i < 200; ++i) {
    std::vector<ConjugateTerm> p{{e(rng), gf4->random(rng), e(rng)}}, q{{e(rng), gf4->random(rng), e(rng)}};
    ASSERT_EQ(jordan_laurent_iso(target, conjugate_mul(*a, p, q)),
              jordan_laurent_iso(target, p) * jordan_laurent_iso(target, q));
  }
}

TEST(Jordan, AnnihilatorTransferOnRigidBase) {
  auto z6 = make_zmod(6);
  auto a = make_jordan(z6, identity_endo(z6));
  std::vector<std::vector<Element>> chain{{a->make(0, z6->integer(2))}, {a->make(1, z6->integer(2)), a->make(0, z6->integer(3))}};
  auto rep = lemma_pro4_check(a, chain, 2);
  EXPECT_TRUE(rep.pass);
  ASSERT_EQ(rep.steps.size(), 1u);
  auto z4 = make_zmod(4);
  EXPECT_THROW(lemma_pro4_check(make_jordan(z4, identity_endo(z4)), chain, 2), Error);
}
