#include <gtest/gtest.h>

#include "sgps/sgps.hpp"

using namespace sgps;

namespace {

MonoidHandle nat() { return make_monoid(MonoidKind::nat); }
MonoidHandle qnn() { return make_monoid(MonoidKind::rat_nonneg); }

// Dense skew convolution over Nat with omega_u = frobenius^u, computed from
// scratch: omega_u(r) = r^(2^u) in characteristic 2.
std::map<int, Element> oracle_mul_frobenius(const Series& f, const Series& g) {
  std::map<int, Element> out;
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      int u = static_cast<int>(to_int64(a.exponent)), v = static_cast<int>(to_int64(b.exponent));
      Element tw = b.coefficient.pow(std::uint64_t{1} << u);
      auto [it, fresh] = out.try_emplace(u + v, a.coefficient * tw);
      if (!fresh) it->second += a.coefficient * tw;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

TEST(Monoids, StrictOrderHoldsOnBuiltins) {
  for (auto k : {MonoidKind::nat, MonoidKind::integer, MonoidKind::rat_nonneg, MonoidKind::rat}) {
    auto rep = verify_strict_order(*make_monoid(k), 2000, 9);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.checked, 2000u);
  }
}

TEST(Monoids, TableCheckReportsViolation) {
  // max is not strictly ordered: 1 < 2 but max(3,1) = max(3,2)
  std::vector<int> carrier{0, 1, 2, 3};
  auto v = verify_strict_order(carrier, [](int a, int b) { return std::max(a, b); }, std::less<int>());
  ASSERT_TRUE(v.has_value());
  EXPECT_LT(v->a, v->b);
  auto ok = verify_strict_order(carrier, [](int a, int b) { return a + b; }, std::less<int>());
  EXPECT_FALSE(ok.has_value());
}

TEST(Monoids, CarrierAndUnits) {
  EXPECT_THROW(nat()->check(Rational(1, 2)), Error);
  EXPECT_THROW(qnn()->check(Rational(-1, 2)), Error);
  EXPECT_NO_THROW(make_monoid(MonoidKind::rat)->check(Rational(-1, 3)));
  EXPECT_TRUE(make_monoid(MonoidKind::integer)->is_unit(-5));
  EXPECT_FALSE(qnn()->is_unit(Rational(1, 2)));
  EXPECT_TRUE(qnn()->is_unit(0));
  auto rep = check_artinian_narrow({3, 1, Rational(1, 2), 1}, *qnn());
  EXPECT_EQ(rep.sorted, (std::vector<Rational>{Rational(1, 2), 1, 3}));
}

TEST(Series, NormalizationDropsZerosAndMerges) {
  auto r = make_zmod(6);
  auto ctx = make_context(r, nat());
  Series f(ctx, {{2, r->integer(3)}, {0, r->integer(1)}, {2, r->integer(3)}, {5, r->zero()}});
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.str(), "c(1)");
  EXPECT_THROW(Series(ctx, {{Rational(1, 2), r->one()}}), Error);
  EXPECT_THROW(Series(ctx, {{0, make_zmod(6)->one()}}), Error);
}

TEST(Series, TruncationKeepsCutoffExponent) {
  auto r = make_zmod(5);
  auto ctx = make_context(r, qnn());
  Series f(ctx, {{0, r->one()}, {Rational(3, 2), r->one()}, {2, r->one()}, {3, r->one()}});
  auto t = series_truncate(f, 2);
  EXPECT_EQ(t.terms().size(), 3u);
  EXPECT_EQ(*t.trunc(), Rational(2));
  EXPECT_EQ(series_truncate(t, 5).trunc(), std::optional<Rational>(2));
}

TEST(Series, MultiplicationMatchesDenseFrobeniusOracle) {
  auto gf4 = make_gf(2, 2);
  auto ctx = make_context(gf4, nat(), make_frobenius(gf4));
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    Series f = random_series(ctx, rng, 6), g = random_series(ctx, rng, 6);
    auto want = oracle_mul_frobenius(f, g);
    Series got = f * g;
    ASSERT_EQ(got.terms().size(), want.size()) << f.str() << " * " << g.str();
    for (const auto& t : got.terms()) ASSERT_EQ(t.coefficient, want.at(static_cast<int>(to_int64(t.exponent))));
  }
}

TEST(Series, SkewCommutationRule) {
  auto gf4 = make_gf(2, 2);
  auto ctx = make_context(gf4, nat(), make_frobenius(gf4));
  Element w = dynamic_cast<const GaloisFieldRing&>(*gf4).generator();
  // e(1) c(w) = c(w^2) e(1) = c(w+1) e(1)
  EXPECT_EQ(series_e(ctx, 1) * series_c(ctx, w), series_c(ctx, w + gf4->one()) * series_e(ctx, 1));
  EXPECT_EQ(series_e(ctx, 2) * series_c(ctx, w), series_c(ctx, w) * series_e(ctx, 2));
}

TEST(Series, RingAxiomsOnTruncatedRationalExponents) {
  auto r = make_zmod(6);
  auto ctx = make_context(r, qnn());
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    auto f = random_series(ctx, rng, 5, Rational(6)), g = random_series(ctx, rng, 5, Rational(6)),
         h = random_series(ctx, rng, 5);
    ASSERT_EQ((f * g) * h, f * (g * h));
    ASSERT_EQ(f * (g + h), f * g + f * h);
    ASSERT_EQ((f - f), Series(ctx, {}, Rational(6)));
  }
}

TEST(Series, IntegerMonoidProductTruncationStaysSound) {
  // With Int exponents a truncated factor can hide terms below the other's cutoff.
  auto r = make_integers();
  auto ctx = make_context(r, make_monoid(MonoidKind::integer));
  Series f(ctx, {{0, r->one()}}, Rational(3));
  Series g(ctx, {{-2, r->one()}, {0, r->one()}});
  auto p = f * g;
  ASSERT_TRUE(p.trunc().has_value());
  EXPECT_EQ(*p.trunc(), Rational(1));
}

TEST(Series, PiIsTheLeadingTerm) {
  auto r = make_zmod(6);
  auto ctx = make_context(r, qnn());
  Series f(ctx, {{Rational(1, 3), r->integer(2)}, {1, r->one()}});
  auto [s, c] = series_pi(f);
  EXPECT_EQ(s, Rational(1, 3));
  EXPECT_EQ(c, r->integer(2));
  EXPECT_THROW(series_pi(Series(ctx, {})), Error);
}

TEST(Series, OmegaTableRejectsForeignEndomorphisms) {
  auto gf4 = make_gf(2, 2);
  EXPECT_THROW(make_context(gf4, nat(), make_frobenius(make_gf(2, 2))), Error);
  EXPECT_THROW(make_context(gf4, qnn(), make_frobenius(gf4)), Error);
  auto ctx = make_context(gf4, nat(), make_frobenius(gf4));
  EXPECT_TRUE(validate_omega(*ctx, 200, 1));
}

TEST(Inversion, Z5InversesMatchGeometricSeries) {
  // (1 - a e(1))^-1 = sum a^k e(k)
  auto r = make_zmod(5);
  auto ctx = make_context(r, nat());
  for (int a = 1; a < 5; ++a) {
    Series f(ctx, {{0, r->one()}, {1, r->integer(-a)}});
    Series g = series_invert(f, 10);
    EXPECT_EQ(g.terms().size(), 11u);
    for (int k = 0; k <= 10; ++k) EXPECT_EQ(g.coefficient(k), r->integer(a).pow(static_cast<std::uint64_t>(k)));
  }
}

TEST(Inversion, RationalExponentsAndSkewTwist) {
  auto gf4 = make_gf(2, 2);
  Element w = dynamic_cast<const GaloisFieldRing&>(*gf4).generator();
  auto ctx = make_context(gf4, nat(), make_frobenius(gf4));
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Series f = series_c(ctx, w) + random_series(ctx, rng, 4);
    if (f.coefficient(0).is_zero()) continue;
    Series g = series_invert(f, 12);
    auto one = series_truncate(series_c(ctx, gf4->one()), 12);
    EXPECT_EQ(series_truncate(f * g, 12), one);
    EXPECT_EQ(series_truncate(g * f, 12), one);
  }
  auto qctx = make_context(make_zmod(7), qnn());
  Series h(qctx, {{0, qctx->ring()->one()}, {Rational(2, 3), qctx->ring()->one()}});
  Series hinv = series_invert(h, 2);
  EXPECT_EQ(hinv.coefficient(Rational(4, 3)), qctx->ring()->one());
  EXPECT_EQ(hinv.coefficient(Rational(2)), qctx->ring()->integer(-1));
}

TEST(Inversion, ErrorCodes) {
  auto r = make_zmod(6);
  auto ctx = make_context(r, nat());
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code_of([&] { series_invert(series_c(ctx, r->integer(2)) + series_e(ctx, 1), 8); }),
            ErrorCode::NonUnitLeadingCoefficient);
  EXPECT_EQ(code_of([&] { series_invert(series_e(ctx, 1), 8); }), ErrorCode::NonZeroLeadingExponent);
  EXPECT_EQ(code_of([&] { series_invert(Series(ctx, {}), 8); }), ErrorCode::ZeroSeries);
  auto ictx = make_context(r, make_monoid(MonoidKind::integer));
  EXPECT_EQ(code_of([&] { series_invert(series_c(ictx, r->one()), 8); }), ErrorCode::UnsupportedMonoid);
}

TEST(Divisibility, HalfPowerChainWitnessesReplay) {
  auto r = make_zmod(6);
  auto ctx = make_context(r, qnn());
  for (int n = 1; n <= 6; ++n) {
    Rational s(BigInt(1), BigInt(1) << n);
    auto yes = series_divide_left(series_e(ctx, 1), series_e(ctx, s));
    ASSERT_EQ(yes.verdict, Decision::yes);
    EXPECT_EQ(*yes.witness * series_e(ctx, s), series_e(ctx, 1));
    auto no = series_divide_left(series_e(ctx, s / 2), series_e(ctx, s));
    EXPECT_EQ(no.verdict, Decision::no) << no.reason;
  }
}

TEST(Divisibility, CoefficientObstructionInZmod) {
  auto r = make_zmod(6);
  auto ctx = make_context(r, nat());
  // c(3) is not a multiple of c(2) in Z/6, but c(4) is
  EXPECT_EQ(series_divide_right(series_c(ctx, r->integer(3)), series_c(ctx, r->integer(2))).verdict, Decision::no);
  auto d = series_divide_right(series_c(ctx, r->integer(4)), series_c(ctx, r->integer(2)));
  ASSERT_EQ(d.verdict, Decision::yes);
  EXPECT_EQ(series_c(ctx, r->integer(2)) * *d.witness, series_c(ctx, r->integer(4)));
  EXPECT_EQ(series_divide_right(series_e(ctx, 1), Series(ctx, {})).verdict, Decision::no);
}

TEST(Divisibility, RandomProductsAreRecognized) {
  auto r = make_zmod(5);
  auto ctx = make_context(r, nat());
  Rng rng(17);
  int decided = 0;
  for (int i = 0; i < 60; ++i) {
    Series g = random_series(ctx, rng, 3), h = random_series(ctx, rng, 3);
    if (g.is_zero()) continue;
    Series f = g * h;
    auto res = series_divide_right(f, g, 20000);
    ASSERT_NE(res.verdict, Decision::no) << f.str() << " / " << g.str();
    if (res.verdict == Decision::yes) {
      ++decided;
      EXPECT_EQ(g * *res.witness, f);
    }
  }
  EXPECT_GT(decided, 30);
}
