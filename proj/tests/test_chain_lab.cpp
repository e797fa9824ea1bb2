#include <gtest/gtest.h>

#include <numeric>

#include "sgps/sgps.hpp"

using namespace sgps;

namespace {

// Intersection of the ideals r^k Z/n for k = 1..n, by direct enumeration.
std::set<int> power_intersection_oracle(int n, int r) {
  std::set<int> inter;
  for (int x = 0; x < n; ++x) inter.insert(x);
  int p = r % n;
  for (int k = 1; k <= n; ++k) {
    std::set<int> ideal;
    for (int s = 0; s < n; ++s) ideal.insert((s * p) % n);
    std::set<int> next;
    std::set_intersection(inter.begin(), inter.end(), ideal.begin(), ideal.end(), std::inserter(next, next.begin()));
    inter = std::move(next);
    p = (p * r) % n;
  }
  return inter;
}

bool is_prime_power(int n) {
  for (int p = 2; p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  return false;
}

}  // namespace

TEST(Archimedean, ZmodMatchesEnumerationOracle) {
  for (int n = 2; n <= 40; ++n) {
    auto r = make_zmod(n);
    bool oracle = true;
    for (int a = 0; a < n; ++a) {
      if (std::gcd(a, n) == 1) continue;
      auto inter = power_intersection_oracle(n, a);
      auto got = intersection_powers(r, r->integer(a), Side::left);
      ASSERT_EQ(got.stable.size(), inter.size()) << a << " in Z/" << n;
      if (inter.size() > 1) oracle = false;
    }
    auto v = archimedean_probe(r, Side::left);
    EXPECT_EQ(v.archimedean, oracle) << n;
    // Z/n is archimedean exactly when n is a prime power
    EXPECT_EQ(v.archimedean, is_prime_power(n)) << n;
    EXPECT_EQ(archimedean_probe(r, Side::right).archimedean, v.archimedean);
  }
}

TEST(Archimedean, Z6WitnessAndStableSet) {
  auto r = make_zmod(6);
  auto v = archimedean_probe(r, Side::left);
  EXPECT_FALSE(v.archimedean);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, r->integer(3));
  EXPECT_EQ(v.stable, (std::vector<Element>{r->integer(0), r->integer(3)}));
  EXPECT_EQ(v.nonunits_checked, 4u);
}

TEST(Factorization, DetectsUnitFactor) {
  auto r = make_zmod(8);
  // a_n = 2^(4-n), b_n = 2: never a unit
  auto a = [&](std::size_t n) { return r->integer(2).pow(n <= 4 ? 4 - n : 0); };
  auto b = [&](std::size_t n) { return n < 4 ? r->integer(2) : r->one(); };
  auto v = factorization_sequence_check(a, b, 6);
  ASSERT_TRUE(v.m.has_value());
  EXPECT_EQ(*v.m, 4u);
  EXPECT_THROW(factorization_sequence_check(a, [&](std::size_t) { return r->integer(3); }, 4), Error);

  auto q = make_monoid(MonoidKind::rat_nonneg);
  auto halves = factorization_sequence_check(
      *q, [](std::size_t n) { return Rational(BigInt(1), BigInt(1) << n); },
      [](std::size_t n) { return Rational(BigInt(1), BigInt(1) << (n + 1)); }, 20);
  EXPECT_EQ(halves.str(), "NoUnitFactorUpTo(20)");
}

TEST(Chains, Z8ConstantChainStabilizes) {
  auto r = make_zmod(8);
  auto ctx = make_context(r, make_monoid(MonoidKind::nat));
  std::vector<Series> elems{series_c(ctx, r->integer(4)), series_c(ctx, r->integer(2)), series_c(ctx, r->one()),
                            series_c(ctx, r->integer(3))};
  auto rep = chain_explore(elems, Side::right, 10000);
  EXPECT_FALSE(rep.strictly_ascending());
  ASSERT_TRUE(rep.stabilized_at.has_value());
  EXPECT_EQ(*rep.stabilized_at, 3u);
  EXPECT_EQ(rep.generates_whole, (std::vector<Decision>{Decision::no, Decision::no, Decision::yes, Decision::yes}));
}

TEST(Chains, HalfPowerChainIsStrict) {
  auto r = make_zmod(6);
  auto ctx = make_context(r, make_monoid(MonoidKind::rat_nonneg));
  std::vector<Series> elems;
  for (int n = 0; n < 6; ++n) elems.push_back(series_e(ctx, Rational(BigInt(1), BigInt(1) << n)));
  auto rep = chain_explore(elems, Side::left, 100000);
  EXPECT_TRUE(rep.strictly_ascending());
  EXPECT_FALSE(rep.stabilized_at.has_value());
  for (const auto& s : rep.steps) EXPECT_TRUE(s.replayed);
}

TEST(LemmaSuite, ExhaustiveOnRigidBasesAndRejectsZ4) {
  auto nat = make_monoid(MonoidKind::nat);
  for (int n : {2, 3, 6, 10}) {
    auto rep = rigid_lemma_suite(make_context(make_zmod(n), nat), 3);
    EXPECT_TRUE(rep.pass) << n;
    EXPECT_TRUE(rep.exhaustive);
    EXPECT_GT(rep.checked, 0u);
  }
  auto z4 = rigid_lemma_suite(make_context(make_zmod(4), nat), 3);
  EXPECT_FALSE(z4.pass);
  EXPECT_EQ(z4.counterexample, std::optional<std::string>("2"));
}

TEST(AnnihilatorChains, FreeAlgebraChainIsStrictWithVariableWitnesses) {
  auto alg = free_algebra(CoefficientField(2), 4, FreeAlgRelations::all_mixed, 4);
  std::vector<std::vector<Element>> families{
      {alg->variable(1), alg->variable(2), alg->variable(3)}, {alg->variable(2), alg->variable(3)}, {alg->variable(3)}};
  auto rep = annihilator_chain(alg, families, Side::left);
  EXPECT_EQ(rep.strict_steps(), 2u);
  ASSERT_EQ(rep.steps.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    ASSERT_TRUE(rep.steps[i].witness.has_value());
    const auto& w = *rep.steps[i].witness;
    for (const auto& x : families[i + 1]) EXPECT_TRUE((w * x).is_zero());
    bool kills_all = true;
    for (const auto& x : families[i]) kills_all = kills_all && (w * x).is_zero();
    EXPECT_FALSE(kills_all);
  }
}

TEST(UnitSearch, ExteriorUnitFoundAndVerified) {
  auto alg = exterior_algebra(CoefficientField::rationals(), 6);
  auto ctx = make_skew_context(alg, exterior_shift(alg));
  // 1 - v1 is a unit of the coefficient ring, so the constant polynomial is too
  auto g = TwistedPoly::constant(ctx, alg->one() - alg->variable(1));
  auto res = bounded_unit_search(g, 0, 1, Side::right);
  ASSERT_TRUE(res.found);
  EXPECT_EQ(g * *res.inverse, TwistedPoly::constant(ctx, alg->one()));
}

TEST(UnitSearch, FreeAlgebraGeneratorHasNoSmallInverse) {
  auto alg = free_algebra(CoefficientField::rationals(), 4, FreeAlgRelations::all_mixed, 4);
  auto ctx = make_skew_context(alg, identity_endo(alg));
  auto g = TwistedPoly::constant(ctx, alg->variable(2));
  for (Side side : {Side::left, Side::right}) EXPECT_FALSE(bounded_unit_search(g, 2, 2, side).found);
}

TEST(Scenarios, EveryScenarioRunsDeterministically) {
  for (const auto& id : scenario_ids()) {
    ScenarioParams p;
    if (id == "ex-freealg") p = {{"N", "8"}, {"field", "3"}};
    if (id == "ex-exterior") p = {{"N", "10"}, {"k", "4"}, {"n", "3"}};
    auto a = run_scenario(id, p), b = run_scenario(id, p);
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump()) << id;
    EXPECT_FALSE(a.claims.empty());
  }
}

TEST(Scenarios, QchainRecordsOnlyTheZ6Disagreement) {
  auto rep = run_scenario("ex-qchain", {{"n", "4"}});
  for (const auto& c : rep.claims) {
    if (c.id == "archimedean-Z6") {
      EXPECT_FALSE(c.agrees);
    } else {
      EXPECT_TRUE(c.agrees) << c.id << ": " << c.observed;
    }
  }
  EXPECT_EQ(rep.disagreements(), 1u);
}

TEST(Scenarios, HeinzerLantzAgreesForLargerN) {
  auto rep = run_scenario("ex-heinzer-lantz", {{"N", "6"}, {"field", "5"}});
  EXPECT_TRUE(rep.all_agree());
}

TEST(Scenarios, ParameterErrors) {
  auto code_of = [](const std::string& id, const ScenarioParams& p) {
    try {
      run_scenario(id, p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code_of("ex-nope", {}), ErrorCode::UnknownScenario);
  EXPECT_EQ(code_of("ex-qchain", {{"n", "0"}}), ErrorCode::ParameterRange);
  EXPECT_EQ(code_of("ex-qchain", {{"bogus", "1"}}), ErrorCode::ParameterRange);
  EXPECT_EQ(code_of("ex-heinzer-lantz", {{"N", "2"}}), ErrorCode::ParameterRange);
}
