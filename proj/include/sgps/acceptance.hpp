#pragma once

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sgps/scenarios.hpp"

// Acceptance criteria 1-9 as self-contained, seeded checks. Shared by the
// acceptance test binary and `sgps-lab selftest`.

namespace sgps::acceptance {

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

struct Failures {
  std::vector<std::string> items;
  void add(std::string s) {
    if (items.size() < 5) items.push_back(std::move(s));
    ++count;
  }
  std::size_t count = 0;
  std::string str() const {
    std::string s = std::to_string(count) + " failure(s)";
    for (const auto& i : items) s += "; " + i;
    return s;
  }
};

inline const Claim& claim(const ScenarioReport& rep, const std::string& id) {
  const Claim* c = rep.find(id);
  if (c == nullptr) throw Error(ErrorCode::InvalidArgument, rep.id + " has no claim " + id);
  return *c;
}

inline void require_claim(Failures& f, const ScenarioReport& rep, const std::string& id) {
  const Claim* c = rep.find(id);
  if (c == nullptr) f.add("missing claim " + id);
  else if (!c->agrees) f.add(id + ": expected " + c->expected + ", observed " + c->observed);
}

}  // namespace detail

/// 1. Associativity and both distributive laws on 1000 seeded triples per context.
inline Result criterion_ring_axioms(std::uint64_t seed = 20240601) {
  Result r{1, "convolution ring axioms", false, "", 0};
  auto nat = make_monoid(MonoidKind::nat);
  auto qnn = make_monoid(MonoidKind::rat_nonneg);
  auto z6 = make_zmod(6);
  auto gf4 = make_gf(2, 2);
  std::vector<ContextHandle> ctxs{make_context(z6, nat), make_context(gf4, nat, make_frobenius(gf4)),
                                  make_context(z6, qnn)};
  const Rational cut(12);
  const auto start = std::chrono::steady_clock::now();
  detail::Failures fails;
  std::size_t checked = 0;
  Rng rng(seed);
  for (const auto& ctx : ctxs)
    for (int i = 0; i < 1000; ++i) {
      Series f = random_series(ctx, rng, 5, cut), g = random_series(ctx, rng, 5, cut), h = random_series(ctx, rng, 5, cut);
      ++checked;
      if ((f * g) * h != f * (g * h)) fails.add("assoc in " + ctx->describe() + ": f=" + f.str());
      if (f * (g + h) != f * g + f * h) fails.add("left distributivity in " + ctx->describe());
      if ((f + g) * h != f * h + g * h) fails.add("right distributivity in " + ctx->describe());
    }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 10.0) fails.add("took " + std::to_string(secs) + " s, limit 10 s");
  r.pass = fails.count == 0;
  r.detail = std::to_string(checked) + " triples, " + fails.str();
  return r;
}

/// 2. Rigid lemma suite on (Z/n, id) and (GF(4), frobenius); Z/4 rejected.
inline Result criterion_lemma_suite() {
  Result r{2, "rigid lemma suite", false, "", 0};
  auto nat = make_monoid(MonoidKind::nat);
  detail::Failures fails;
  for (int n : {2, 3, 5, 6, 10, 15, 30}) {
    auto rep = rigid_lemma_suite(make_context(make_zmod(n), nat), 5);
    if (!rep.pass || !rep.exhaustive) fails.add("Z/" + std::to_string(n) + ": " + rep.note + rep.counterexample.value_or(""));
  }
  auto gf4 = make_gf(2, 2);
  auto rep = rigid_lemma_suite(make_context(gf4, nat, make_frobenius(gf4)), 5);
  if (!rep.pass || !rep.exhaustive) fails.add("GF(4): " + rep.counterexample.value_or(rep.note));
  auto z4 = rigid_lemma_suite(make_context(make_zmod(4), nat), 5);
  if (z4.pass || z4.counterexample != std::optional<std::string>("2")) fails.add("Z/4 not rejected with witness 2");
  r.pass = fails.count == 0;
  r.detail = "Z/{2,3,5,6,10,15,30}, GF(4) pass; Z/4 -> " + z4.note + "; " + fails.str();
  return r;
}

/// 3. ex-qchain: replayed witnesses, exhausted strictness, no stabilization, factorization horizon.
inline Result criterion_qchain() {
  Result r{3, "ex-qchain", false, "", 0};
  auto rep = run_scenario("ex-qchain", {{"n", "10"}});
  detail::Failures fails;
  for (int n = 1; n <= 10; ++n) {
    auto id = "e1-in-Ae(1/2^" + std::to_string(n) + ")";
    detail::require_claim(fails, rep, id);
    if (rep.find(id) && !detail::claim(rep, id).detail.value("replayed", false)) fails.add(id + " not replayed");
    detail::require_claim(fails, rep, "strict-" + std::to_string(n));
  }
  detail::require_claim(fails, rep, "chain");
  detail::require_claim(fails, rep, "factorization");
  if (rep.find("factorization") && detail::claim(rep, "factorization").observed != "NoUnitFactorUpTo(20)")
    fails.add("factorization verdict");
  // independent witness replay
  auto ctx = make_context(make_zmod(6), make_monoid(MonoidKind::rat_nonneg));
  for (int n = 1; n <= 10; ++n) {
    Rational s(BigInt(1), BigInt(1) << n);
    if (series_mul(series_e(ctx, 1 - s), series_e(ctx, s)) != series_e(ctx, 1)) fails.add("replay n=" + std::to_string(n));
  }
  r.pass = fails.count == 0;
  r.detail = "n <= 10, " + (rep.find("factorization") ? detail::claim(rep, "factorization").observed : "?") + "; " + fails.str();
  return r;
}

/// 4. ex-heinzer-lantz identities.
inline Result criterion_heinzer_lantz() {
  Result r{4, "ex-heinzer-lantz", false, "", 0};
  auto rep = run_scenario("ex-heinzer-lantz", {{"N", "3"}});
  detail::Failures fails;
  for (const char* id : {"a3^2(a1-a2)^2", "a3a2(a1-a2)^2", "a3(a1-a2)"}) detail::require_claim(fails, rep, id);
  std::string nf;
  if (rep.find("a3(a1-a2)")) nf = detail::claim(rep, "a3(a1-a2)").detail.value("normal_form", "");
  if (nf != "a1*a3 - a2*a3") fails.add("normal form " + nf);
  r.pass = fails.count == 0;
  r.detail = "a3(a1-a2) = " + nf + "; " + fails.str();
  return r;
}

/// 5. ex-freealg at N = 16 over F2 and Q.
inline Result criterion_freealg() {
  Result r{5, "ex-freealg", false, "", 0};
  auto rep = run_scenario("ex-freealg", {{"N", "16"}});
  detail::Failures fails;
  for (std::string tag : {"F2", "Q"}) {
    for (int n = 2; n <= 8; ++n) {
      detail::require_claim(fails, rep, tag + ".fg-" + std::to_string(n));
      detail::require_claim(fails, rep, tag + ".g-nonunit-" + std::to_string(n));
    }
    detail::require_claim(fails, rep, tag + ".annihilator-chain");
    detail::require_claim(fails, rep, tag + ".reduced");
    if (rep.find(tag + ".g-nonunit-2") && detail::claim(rep, tag + ".g-nonunit-2").detail.value("t_degree", 0) != 4)
      fails.add("unit search degree");
  }
  r.pass = fails.count == 0;
  r.detail = "f_n g_n = f_{n-1} (2 <= n <= 8), no inverse of g_n in degree <= 4, annihilator chain x1, x2, reduced; " +
             fails.str();
  return r;
}

/// 6. ex-exterior at N = 20 over Q.
inline Result criterion_exterior() {
  Result r{6, "ex-exterior", false, "", 0};
  ScenarioParams p{{"N", "20"}, {"k", "8"}, {"n", "5"}};
  auto rep = run_scenario("ex-exterior", p);
  detail::Failures fails;
  detail::require_claim(fails, rep, "alpha-endomorphism");
  detail::require_claim(fails, rep, "not-rigid");
  detail::require_claim(fails, rep, "p0-inverse");
  for (int k = 1; k <= 8; ++k) detail::require_claim(fails, rep, "p1^" + std::to_string(k));
  std::size_t recursion = 0;
  for (const auto& c : rep.claims)
    if (c.id.rfind("recursion-", 0) == 0) ++recursion;
  if (recursion != 15) fails.add("expected 15 recursion verdicts, got " + std::to_string(recursion));
  auto again = run_scenario("ex-exterior", p);
  if (again.to_json().dump() != rep.to_json().dump()) fails.add("report not deterministic");
  r.pass = fails.count == 0;
  r.detail = std::to_string(recursion) + " recursion verdicts, " + std::to_string(rep.disagreements()) +
             " recorded disagreement(s); " + fails.str();
  return r;
}

/// 7. Jordan layer.
inline Result criterion_jordan(std::uint64_t seed = 7) {
  Result r{7, "Jordan layer", false, "", 0};
  detail::Failures fails;
  auto gf4 = make_gf(2, 2);
  auto jg = make_jordan(gf4, make_frobenius(gf4));
  auto z6 = make_zmod(6);
  auto jz = make_jordan(z6, identity_endo(z6));
  std::size_t normalized = 0;
  for (std::int64_t level = 0; level <= 3; ++level)
    for (const auto& b : gf4->universe()) {
      Element raw = jg->make_raw(level, b);
      Element once = jordan_normalize(raw);
      ++normalized;
      if (jordan_normalize(once) != once) fails.add("normalize not idempotent at level " + std::to_string(level));
      if (JordanRing::level_of(once) > level) fails.add("normalization raised the level");
    }
  Rng rng(seed);
  for (int i = 0; i < 1000; ++i) {
    Element a = jg->random(rng), b = jg->random(rng), c = jg->random(rng);
    if ((a * b) * c != a * (b * c) || a * (b + c) != a * b + a * c || (a + b) * c != a * c + b * c)
      fails.add("ring axiom at " + a.str() + ", " + b.str() + ", " + c.str());
  }
  auto target = make_jordan_laurent_context(jg);
  auto random_terms = [&] {
    std::uniform_int_distribution<int> count(1, 3), exp(0, 3);
    std::vector<ConjugateTerm> out;
    for (int k = count(rng); k > 0; --k) out.push_back({exp(rng), gf4->random(rng), exp(rng)});
    return out;
  };
  for (int i = 0; i < 500; ++i) {
    auto f = random_terms(), g = random_terms();
    auto sum = f;
    sum.insert(sum.end(), g.begin(), g.end());
    if (jordan_laurent_iso(target, sum) != jordan_laurent_iso(target, f) + jordan_laurent_iso(target, g))
      fails.add("iso not additive");
    if (jordan_laurent_iso(target, conjugate_mul(*jg, f, g)) != jordan_laurent_iso(target, f) * jordan_laurent_iso(target, g))
      fails.add("iso not multiplicative");
  }
  std::size_t searched = 0;
  for (const auto& j : {jg, jz}) {
    JordanShiftEndo alpha(j, false);
    for (const auto& a : j->canonical_elements(3)) {
      ++searched;
      if (!a.is_zero() && (a * alpha(a)).is_zero()) fails.add("rigidity witness " + a.str() + " in " + j->name());
    }
  }
  r.pass = fails.count == 0;
  r.detail = std::to_string(normalized) + " normalizations, 1000 triples, 500 iso pairs, " + std::to_string(searched) +
             " rigidity candidates; " + fails.str();
  return r;
}

/// 8. Series inversion against a dense mod-5 convolution oracle.
inline Result criterion_inversion(std::uint64_t seed = 8) {
  Result r{8, "series inversion", false, "", 0};
  detail::Failures fails;
  auto z5 = make_zmod(5);
  auto ctx = make_context(z5, make_monoid(MonoidKind::nat));
  const int cutoff = 16;
  Rng rng(seed);
  std::uniform_int_distribution<int> coef(0, 4), lead(1, 4), len(1, 8);
  for (int i = 0; i < 100; ++i) {
    std::vector<int> fc(cutoff + 1, 0);
    fc[0] = lead(rng);
    for (int k = 1, n = len(rng); k <= n; ++k) fc[static_cast<std::size_t>(k)] = coef(rng);
    std::vector<SeriesTerm> terms;
    for (int k = 0; k <= cutoff; ++k)
      if (fc[static_cast<std::size_t>(k)]) terms.push_back({Rational(k), z5->integer(fc[static_cast<std::size_t>(k)])});
    Series f(ctx, terms);
    Series g = series_invert(f, cutoff);
    std::vector<int> gc(cutoff + 1, 0);
    for (const auto& t : g.terms()) {
      auto k = static_cast<std::size_t>(numerator(t.exponent));
      gc[k] = static_cast<int>(std::get<std::int64_t>(t.coefficient.payload()));
    }
    for (int side = 0; side < 2; ++side) {
      const auto& x = side == 0 ? fc : gc;
      const auto& y = side == 0 ? gc : fc;
      for (int k = 0; k <= cutoff; ++k) {
        int acc = 0;
        for (int u = 0; u <= k; ++u) acc += x[static_cast<std::size_t>(u)] * y[static_cast<std::size_t>(k - u)];
        if (acc % 5 != (k == 0 ? 1 : 0)) {
          fails.add("sample " + std::to_string(i) + " coefficient " + std::to_string(k));
          break;
        }
      }
    }
  }
  std::string z6_outcome = "no error";
  try {
    auto z6ctx = make_context(make_zmod(6), make_monoid(MonoidKind::nat));
    series_invert(series_c(z6ctx, z6ctx->ring()->integer(2)) + series_e(z6ctx, 1), cutoff);
  } catch (const Error& e) {
    z6_outcome = std::string(to_string(e.code()));
  }
  if (z6_outcome != "NonUnitLeadingCoefficient") fails.add("Z/6 with f(0) = 2 gave " + z6_outcome);
  r.pass = fails.count == 0;
  r.detail = "100 inverses at cutoff 16 checked two-sided; Z/6 -> " + z6_outcome + "; " + fails.str();
  return r;
}

/// 9. Archimedean probes and the recorded disagreement.
inline Result criterion_archimedean() {
  Result r{9, "archimedean probes", false, "", 0};
  detail::Failures fails;
  for (int n : {4, 8, 9, 25, 2, 3, 5, 7, 11, 13})
    if (!archimedean_probe(make_zmod(n), Side::left).archimedean) fails.add("Z/" + std::to_string(n) + " not archimedean");
  auto z6 = make_zmod(6);
  auto v = archimedean_probe(z6, Side::left);
  std::vector<Element> expected{z6->integer(0), z6->integer(3)};
  if (v.archimedean || !v.witness || *v.witness != z6->integer(3) || v.stable != expected)
    fails.add("Z/6 verdict or witness");
  auto rep = run_scenario("ex-qchain", {{"n", "1"}});
  const Claim* c = rep.find("archimedean-Z6");
  if (c == nullptr || c->agrees || c->observed != "not archimedean") fails.add("disagreement not recorded");
  r.pass = fails.count == 0;
  r.detail = "Z/6 witness " + (v.witness ? v.witness->str() : "-") + ", stable set size " + std::to_string(v.stable.size()) +
             ", disagreement recorded: " + (c && !c->agrees ? "yes" : "no") + "; " + fails.str();
  return r;
}

inline std::vector<std::function<Result()>> criteria() {
  return {[] { return criterion_ring_axioms(); }, criterion_lemma_suite, criterion_qchain,
          criterion_heinzer_lantz,                criterion_freealg,     criterion_exterior,
          [] { return criterion_jordan(); },      [] { return criterion_inversion(); },
          criterion_archimedean};
}

/// Runs one criterion, converting exceptions into a failing result.
inline Result run_timed(const std::function<Result()>& fn, int id) {
  auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::vector<Result> run_all() {
  std::vector<Result> out;
  auto cs = criteria();
  for (std::size_t i = 0; i < cs.size(); ++i) out.push_back(run_timed(cs[i], static_cast<int>(i + 1)));
  return out;
}

inline std::string format(const Result& r) {
  std::ostringstream os;
  os << "criterion " << r.id << " [" << (r.pass ? "PASS" : "FAIL") << "] " << r.name << " (" << std::fixed;
  os.precision(2);
  os << r.seconds << " s): " << r.detail;
  return os.str();
}

}  // namespace sgps::acceptance
