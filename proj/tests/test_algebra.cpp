#include <gtest/gtest.h>

#include "sgps/sgps.hpp"

using namespace sgps;

namespace {

Poly word_poly(std::initializer_list<std::uint16_t> w, Rational c = 1) {
  Poly p;
  p[Word(w)] = c;
  return p;
}

Rational dot(const SparseVec& row, const SparseVec& v, const CoefficientField& f) {
  Rational acc = 0;
  for (const auto& [c, x] : row) {
    auto it = v.find(c);
    if (it != v.end()) acc = f.add(acc, f.mul(x, it->second));
  }
  return f.normalize(acc);
}

// Random sparse system with small entries; rows may be dependent.
std::vector<SparseVec> random_rows(Rng& rng, std::size_t nrows, std::size_t ncols) {
  std::uniform_int_distribution<int> entry(-3, 3), fill(0, 2);
  std::vector<SparseVec> rows(nrows);
  for (auto& r : rows)
    for (std::size_t c = 0; c < ncols; ++c)
      if (fill(rng) == 0) r[c] = entry(rng);
  if (nrows > 2) rows[nrows - 1] = rows[0];  // forced dependency
  return rows;
}

}  // namespace

class LinalgProperty : public ::testing::TestWithParam<std::int64_t> {};

TEST_P(LinalgProperty, KernelVectorsAreKernelAndIndependent) {
  CoefficientField f(GetParam());
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t nrows = 1 + trial % 6, ncols = 1 + (trial * 7) % 8;
    auto rows = random_rows(rng, nrows, ncols);
    auto basis = kernel_basis(rows, ncols, f);
    auto ech = row_reduce(rows, f);
    // rank-nullity
    EXPECT_EQ(ech.rows.size() + basis.size(), ncols);
    for (const auto& v : basis)
      for (const auto& r : rows) ASSERT_EQ(dot(r, v, f), 0) << "trial " << trial;
  }
}

TEST_P(LinalgProperty, SolutionsSatisfyTheSystem) {
  CoefficientField f(GetParam());
  Rng rng(12);
  std::uniform_int_distribution<int> entry(-4, 4);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t nrows = 1 + trial % 5, ncols = 1 + (trial * 3) % 7;
    auto rows = random_rows(rng, nrows, ncols);
    std::vector<Rational> rhs(nrows);
    if (trial % 2 == 0) {
      // consistent by construction: rhs = rows * x0
      SparseVec x0;
      for (std::size_t c = 0; c < ncols; ++c) x0[c] = entry(rng);
      for (std::size_t i = 0; i < nrows; ++i) rhs[i] = dot(rows[i], x0, f);
    } else {
      for (auto& b : rhs) b = entry(rng);
    }
    auto sol = solve_linear(rows, rhs, ncols, f);
    if (trial % 2 == 0) ASSERT_TRUE(sol.has_value()) << "trial " << trial;
    if (!sol) continue;
    ++solved;
    for (std::size_t i = 0; i < nrows; ++i) ASSERT_EQ(dot(rows[i], *sol, f), f.normalize(rhs[i])) << "trial " << trial;
  }
  EXPECT_GE(solved, 100);
}

INSTANTIATE_TEST_SUITE_P(Fields, LinalgProperty, ::testing::Values(0, 2, 5));

TEST(Linalg, InconsistentSystemHasNoSolution) {
  CoefficientField q = CoefficientField::rationals();
  std::vector<SparseVec> rows{{{0, 1}, {1, 1}}, {{0, 2}, {1, 2}}};
  EXPECT_FALSE(solve_linear(rows, {Rational(1), Rational(3)}, 2, q).has_value());
  EXPECT_TRUE(solve_linear(rows, {Rational(1), Rational(2)}, 2, q).has_value());
}

TEST(QuotientAlgebra, HeinzerLantzIdentities) {
  auto alg = heinzer_lantz_algebra(CoefficientField::rationals(), 3);
  auto a1 = alg->variable(1), a2 = alg->variable(2), a3 = alg->variable(3);
  EXPECT_TRUE((a3 * a3 * (a1 - a2) * (a1 - a2)).is_zero());
  EXPECT_TRUE((a3 * a2 * (a1 - a2) * (a1 - a2)).is_zero());
  auto x = a3 * (a1 - a2);
  EXPECT_FALSE(x.is_zero());
  EXPECT_EQ(x.str(), "a1*a3 - a2*a3");
  // the defining relation itself
  EXPECT_EQ(a3 * a3, a2 * a3);
  EXPECT_EQ(a2 * a2, a1 * a2);
}

TEST(QuotientAlgebra, NormalFormIsIdempotentAndMultiplicationAssociative) {
  auto alg = heinzer_lantz_algebra(CoefficientField(3), 4);
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    auto a = alg->random(rng), b = alg->random(rng), c = alg->random(rng);
    ASSERT_EQ(alg->from_poly(QuotientAlgebra::poly_of(a)), a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(QuotientAlgebra, NoncommutativeFreeAlgebraKillsMixedProducts) {
  auto alg = free_algebra(CoefficientField(2), 4, FreeAlgRelations::all_mixed);
  auto x1 = alg->variable(1), x2 = alg->variable(2);
  EXPECT_TRUE((x1 * x2).is_zero());
  EXPECT_TRUE((x2 * x1).is_zero());
  EXPECT_FALSE((x1 * x1 * x1).is_zero());
  EXPECT_EQ((x1 + x2) * (x1 + x2), x1 * x1 + x2 * x2);  // char 2 and mixed terms vanish
  EXPECT_EQ(is_reduced(alg).verdict, Verdict::holds);
}

TEST(QuotientAlgebra, DegreeCapTruncates) {
  auto alg = free_algebra(CoefficientField::rationals(), 2, FreeAlgRelations::increasing, 3);
  auto x2 = alg->variable(2), x1 = alg->variable(1);
  EXPECT_FALSE((x2 * x2 * x2).is_zero());
  EXPECT_TRUE((x2 * x2 * x2 * x2).is_zero());
  EXPECT_FALSE((x2 * x1).is_zero());
  EXPECT_TRUE((x1 * x2).is_zero());
  EXPECT_EQ(alg->degree(x2 * x1), 2u);
}

TEST(QuotientAlgebra, RejectsNonConfluentRules) {
  // x1 x2 -> x1 and x2 x1 -> x2: the overlap x1 x2 x1 reduces to x1 x1 and x1
  std::vector<RewriteRule> rules{{Word{1, 2}, word_poly({1})}, {Word{2, 1}, word_poly({2})}};
  try {
    make_quotient_algebra(CoefficientField::rationals(), "x", {2, std::nullopt}, RewriteSystem(rules, false));
    FAIL() << "expected NonConfluent";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonConfluent);
  }
}

TEST(QuotientAlgebra, RejectsNonTerminatingRules) {
  std::vector<RewriteRule> rules{{Word{1}, word_poly({1, 1})}};
  try {
    make_quotient_algebra(CoefficientField::rationals(), "x", {1, std::nullopt}, RewriteSystem(rules, true));
    FAIL() << "expected NonTerminating";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonTerminating);
  }
}

TEST(QuotientAlgebra, ExteriorSquaresVanishAndProductsDoNot) {
  auto alg = exterior_algebra(CoefficientField::rationals(), 6);
  Element prod = alg->one();
  for (int i = 1; i <= 6; ++i) {
    EXPECT_TRUE((alg->variable(i) * alg->variable(i)).is_zero());
    prod *= alg->variable(i);
  }
  EXPECT_FALSE(prod.is_zero());
  EXPECT_EQ(alg->degree(prod), 6u);
  EXPECT_EQ(is_reduced(alg).verdict, Verdict::fails);
}

TEST(VarMap, ExteriorShiftIsEndomorphismAndNotRigid) {
  auto alg = exterior_algebra(CoefficientField::rationals(), 7);
  auto alpha = exterior_shift(alg);
  EXPECT_EQ((*alpha)(alg->variable(2)), alg->variable(3));
  EXPECT_TRUE((*alpha)(alg->variable(3)).is_zero());
  EXPECT_TRUE(alpha->escaped().empty());
  EXPECT_TRUE(validate_endomorphism(*alpha, 200, 4).ok);
  auto v = is_rigid(alg, alpha, {alg->variable(3)});
  EXPECT_EQ(v.verdict, Verdict::fails);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE((*v.witness * (*alpha)(*v.witness)).is_zero());

  auto even = exterior_algebra(CoefficientField::rationals(), 6);
  EXPECT_EQ(exterior_shift(even)->escaped(), std::vector<std::string>{"v7"});
}

TEST(VarMap, IllDefinedSubstitutionIsRejected) {
  auto alg = exterior_algebra(CoefficientField::rationals(), 2);
  // v1 -> v1 + v2 sends v1^2 = 0 to 2 v1 v2 != 0
  std::vector<Element> images{alg->variable(1) + alg->variable(2), alg->variable(2)};
  try {
    make_endo_varmap(alg, images);
    FAIL() << "expected NotWellDefined";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotWellDefined);
  }
}

TEST(Annihilators, ZmodMatchesBruteForce) {
  for (int n : {6, 8, 12}) {
    auto r = make_zmod(n);
    for (int x = 0; x < n; ++x) {
      auto ann = annihilator_left(r, {r->integer(x)});
      std::size_t expected = 0;
      for (int a = 0; a < n; ++a) expected += (a * x) % n == 0;
      EXPECT_EQ(ann.elements.size(), expected) << x << " in Z/" << n;
    }
  }
}

TEST(Nilpotency, IndexInZmod) {
  auto r = make_zmod(8);
  EXPECT_EQ(nilpotency_index(r->integer(2), 10), 3);
  EXPECT_EQ(nilpotency_index(r->integer(4), 10), 2);
  EXPECT_EQ(nilpotency_index(r->integer(3), 10), 0);
}
