#pragma once

#include <functional>
#include <set>

#include "sgps/rings.hpp"
#include "sgps/series.hpp"
#include "sgps/skew_laurent.hpp"

namespace sgps {

inline nlohmann::json elements_json(const std::vector<Element>& xs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : xs) out.push_back(x.to_json());
  return out;
}

struct PropertyReport {
  std::string property;
  std::string universe;
  bool pass = true;
  bool exhaustive = false;
  std::size_t checked = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> counterexample;
  std::string note;

  nlohmann::json to_json() const {
    nlohmann::json j{{"property", property}, {"universe", universe}, {"pass", pass},
                     {"exhaustive", exhaustive}, {"checked", checked}, {"note", note}};
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    j["counterexample"] = counterexample ? nlohmann::json(*counterexample) : nlohmann::json(nullptr);
    return j;
  }
};

// ---------------------------------------------------------------- chains

struct ChainStep {
  std::size_t index = 0;  // 1-based: compares f_index and f_{index+1}
  DivisibilityResult forward;   // f_i in f_{i+1}A (right) or A f_{i+1} (left)
  DivisibilityResult backward;  // f_{i+1} in f_i A
  bool replayed = true;
};

struct ChainReport {
  Side side = Side::right;
  std::size_t budget = 0;
  std::vector<Series> elements;
  std::vector<ChainStep> steps;
  std::vector<Decision> generates_whole;  // 1 in f_i A
  std::optional<std::size_t> stabilized_at;

  bool strictly_ascending() const {
    for (const auto& s : steps)
      if (s.forward.verdict != Decision::yes || s.backward.verdict != Decision::no) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json steps_json = nlohmann::json::array();
    for (const auto& s : steps) {
      steps_json.push_back({{"index", s.index},
                            {"forward", s.forward.to_json()},
                            {"backward", s.backward.to_json()},
                            {"replayed", s.replayed}});
    }
    nlohmann::json elems = nlohmann::json::array();
    for (const auto& e : elements) elems.push_back(e.str());
    nlohmann::json whole = nlohmann::json::array();
    for (auto d : generates_whole) whole.push_back(to_string(d));
    nlohmann::json j{{"side", to_string(side)},         {"budget", budget},
                     {"elements", elems},               {"steps", steps_json},
                     {"generates_whole_ring", whole},   {"strictly_ascending", strictly_ascending()}};
    j["stabilized_at"] = stabilized_at ? nlohmann::json(*stabilized_at) : nlohmann::json(nullptr);
    return j;
  }
};

/// Principal one-sided ideals f_1 R' within f_2 R' within ... (Side::right) or
/// R' f_1 within R' f_2 ... (Side::left) in R' = R[[S, omega]]. stabilized_at
/// is the first i where f_i and f_{i+1} generate the same ideal or f_i
/// already generates the whole ring.
inline ChainReport chain_explore(const std::vector<Series>& elems, Side side, std::size_t budget) {
  ChainReport rep;
  rep.side = side;
  rep.budget = budget;
  rep.elements = elems;
  if (elems.empty()) return rep;
  const auto& ctx = elems.front().context();
  Series one = series_c(ctx, ctx->ring()->one());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    auto whole = series_divide(one, elems[i], side, budget);
    rep.generates_whole.push_back(whole.verdict);
    if (whole.verdict == Decision::yes && !rep.stabilized_at) rep.stabilized_at = i + 1;
    if (i + 1 == elems.size()) break;
    ChainStep step;
    step.index = i + 1;
    step.forward = series_divide(elems[i], elems[i + 1], side, budget);
    step.backward = series_divide(elems[i + 1], elems[i], side, budget);
    auto replay = [&](const DivisibilityResult& d, const Series& f, const Series& g) {
      if (d.verdict != Decision::yes) return true;
      Series p = side == Side::right ? series_mul(g, *d.witness) : series_mul(*d.witness, g);
      return p == f || (p.trunc() && series_truncate(f, *p.trunc()) == p);
    };
    step.replayed = replay(step.forward, elems[i], elems[i + 1]) && replay(step.backward, elems[i + 1], elems[i]);
    if (!rep.stabilized_at && step.forward.verdict == Decision::yes && step.backward.verdict == Decision::yes)
      rep.stabilized_at = i + 1;
    rep.steps.push_back(std::move(step));
  }
  return rep;
}

// ---------------------------------------------------------------- archimedean

struct PowerIntersection {
  std::vector<Element> stable;  // the intersection of R r^n (left) or r^n R (right)
  std::size_t stabilized_after = 0;
};

inline PowerIntersection intersection_powers(const RingHandle& r, const Element& x, Side side) {
  if (!r->enumerable()) throw Error(ErrorCode::NotEnumerable, r->name() + " is not enumerable");
  auto u = r->universe();
  std::set<Element> current;
  Element p = x;
  for (std::size_t n = 1;; ++n) {
    std::set<Element> next;
    for (const auto& a : u) next.insert(side == Side::left ? a * p : p * a);
    if (n > 1 && next == current) return {{current.begin(), current.end()}, n - 1};
    current = std::move(next);
    p = p * x;
  }
}

struct ArchimedeanVerdict {
  bool archimedean = true;
  std::optional<Element> witness;
  std::vector<Element> stable;
  std::size_t nonunits_checked = 0;
};

/// Checks every nonunit; the reported witness is the one with the smallest
/// nonzero intersection (first in enumeration order among equals).
inline ArchimedeanVerdict archimedean_probe(const RingHandle& r, Side side) {
  if (!r->enumerable()) throw Error(ErrorCode::NotEnumerable, r->name() + " is not enumerable");
  ArchimedeanVerdict out;
  for (const auto& a : r->universe()) {
    if (is_unit(a).decision != Decision::no) continue;
    ++out.nonunits_checked;
    auto inter = intersection_powers(r, a, side);
    if (inter.stable.size() > 1 && (out.archimedean || inter.stable.size() < out.stable.size())) {
      out.archimedean = false;
      out.witness = a;
      out.stable = inter.stable;
    }
  }
  return out;
}

// ---------------------------------------------------------------- factorization

struct FactorizationVerdict {
  Decision unit_found = Decision::no;  // unknown when a unit test was undecidable
  std::optional<std::size_t> m;
  std::size_t horizon = 0;

  std::string str() const {
    if (m) return "UnitFactorAt(" + std::to_string(*m) + ")";
    if (unit_found == Decision::unknown) return "Undecidable";
    return "NoUnitFactorUpTo(" + std::to_string(horizon) + ")";
  }
};

/// a_n = b_n a_{n+1} for 1 <= n < N, then the least m <= N with b_m a unit.
inline FactorizationVerdict factorization_sequence_check(const std::function<Element(std::size_t)>& a,
                                                         const std::function<Element(std::size_t)>& b,
                                                         std::size_t horizon) {
  for (std::size_t n = 1; n < horizon; ++n)
    if (a(n) != b(n) * a(n + 1))
      throw Error(ErrorCode::RecursionViolated, "a_" + std::to_string(n) + " != b_n a_{n+1} at n = " +
                                                    std::to_string(n));
  FactorizationVerdict out;
  out.horizon = horizon;
  for (std::size_t m = 1; m <= horizon; ++m) {
    auto u = is_unit(b(m));
    if (u.decision == Decision::yes) {
      out.unit_found = Decision::yes;
      out.m = m;
      return out;
    }
    if (u.decision == Decision::unknown) out.unit_found = Decision::unknown;
  }
  return out;
}

/// Additive monoid version: s_n = r_n + s_{n+1}.
inline FactorizationVerdict factorization_sequence_check(const Monoid& mon,
                                                         const std::function<Rational(std::size_t)>& s,
                                                         const std::function<Rational(std::size_t)>& r,
                                                         std::size_t horizon) {
  for (std::size_t n = 1; n < horizon; ++n)
    if (s(n) != mon.op(r(n), s(n + 1)))
      throw Error(ErrorCode::RecursionViolated, "s_n != r_n + s_{n+1} at n = " + std::to_string(n));
  FactorizationVerdict out;
  out.horizon = horizon;
  for (std::size_t m = 1; m <= horizon; ++m)
    if (mon.is_unit(r(m))) {
      out.unit_found = Decision::yes;
      out.m = m;
      return out;
    }
  return out;
}

// ---------------------------------------------------------------- I_f sample

/// Two-sided ideal of an enumerable R generated by gens.
inline std::vector<Element> ideal_closure(const RingHandle& r, const std::vector<Element>& gens) {
  auto u = r->universe();
  std::set<Element> ideal{r->zero()};
  std::vector<Element> frontier;
  for (const auto& g : gens)
    for (const auto& a : u)
      for (const auto& b : u) {
        Element e = a * g * b;
        if (ideal.insert(e).second) frontier.push_back(e);
      }
  while (!frontier.empty()) {
    std::vector<Element> next;
    std::vector<Element> snapshot(ideal.begin(), ideal.end());
    for (const auto& x : frontier)
      for (const auto& y : snapshot) {
        Element s = x + y;
        if (ideal.insert(s).second) next.push_back(s);
      }
    frontier = std::move(next);
  }
  return {ideal.begin(), ideal.end()};
}

/// Bounded under-approximation of I_f = {g(pi(g)) : g in AfA} u {0}: leading
/// coefficients of a f b over a finite pool, closed to a two-sided ideal.
inline std::vector<Element> leading_coeff_ideal_sample(const Series& f, const std::vector<Series>& pool) {
  const auto& r = f.context()->ring();
  std::vector<Element> leads;
  for (const auto& a : pool)
    for (const auto& b : pool) {
      Series g = series_mul(series_mul(a, f), b);
      if (!g.is_zero()) leads.push_back(series_pi(g).coefficient);
    }
  return ideal_closure(r, leads);
}

/// Default pool {c_r e_s : r in R, s in grid}.
inline std::vector<Series> monomial_pool(const ContextHandle& ctx, const std::vector<Rational>& grid) {
  std::vector<Series> pool;
  for (const auto& r : ctx->ring()->universe())
    for (const auto& s : grid) pool.push_back(series_mul(series_c(ctx, r), series_e(ctx, s)));
  return pool;
}

// ---------------------------------------------------------------- annihilators

struct AnnStep {
  std::size_t index = 0;
  bool included = true;
  bool strict = false;
  std::optional<Element> witness;  // in Ann(X_{i+1}) but not in Ann(X_i)
};

struct AnnChainReport {
  Side side = Side::left;
  std::vector<std::size_t> dimensions;  // basis sizes (or element counts)
  std::vector<AnnStep> steps;

  std::size_t strict_steps() const {
    std::size_t n = 0;
    for (const auto& s : steps) n += s.strict ? 1 : 0;
    return n;
  }

  nlohmann::json to_json() const {
    nlohmann::json st = nlohmann::json::array();
    for (const auto& s : steps) {
      nlohmann::json j{{"index", s.index}, {"included", s.included}, {"strict", s.strict}};
      j["witness"] = s.witness ? s.witness->to_json() : nlohmann::json(nullptr);
      st.push_back(j);
    }
    return {{"side", to_string(side)}, {"dimensions", dimensions}, {"steps", st}, {"strict_steps", strict_steps()}};
  }
};

inline AnnChainReport annihilator_chain(const RingHandle& r, const std::vector<std::vector<Element>>& families,
                                        Side side) {
  AnnChainReport rep;
  rep.side = side;
  auto kills = [&](const Element& a, const std::vector<Element>& xs) {
    for (const auto& x : xs)
      if (!(side == Side::left ? a * x : x * a).is_zero()) return false;
    return true;
  };
  std::vector<Annihilator> anns;
  for (const auto& fam : families) {
    anns.push_back(annihilator(r, fam, side));
    rep.dimensions.push_back(anns.back().elements.size());
  }
  for (std::size_t i = 0; i + 1 < families.size(); ++i) {
    AnnStep step;
    step.index = i + 1;
    for (const auto& a : anns[i].elements)
      if (!kills(a, families[i + 1])) {
        step.included = false;
        break;
      }
    for (const auto& a : anns[i + 1].elements)
      if (!kills(a, families[i])) {
        step.strict = true;
        step.witness = a;
        break;
      }
    rep.steps.push_back(std::move(step));
  }
  return rep;
}

// ---------------------------------------------------------------- rigid lemmas

/// Lemmas on S-rigid rings over R[[Nat, omega]], exhaustive over R x R and the
/// exponent grid s, s' in [0, grid], n, k in [1, grid]. Multiplicative
/// notation s^n, ss' becomes n*s and s+s' in the additive monoid.
inline PropertyReport rigid_lemma_suite(const ContextHandle& ctx, int grid = 5) {
  PropertyReport rep;
  rep.property = "jav-1, jav-2, kav";
  rep.universe = ctx->describe() + ", grid " + std::to_string(grid);
  const auto& r = ctx->ring();
  if (!r->enumerable()) throw Error(ErrorCode::NotEnumerable, r->name() + " is not enumerable");
  if (ctx->monoid()->kind() != MonoidKind::nat)
    throw Error(ErrorCode::UnsupportedMonoid, "the lemma suite runs over Nat exponents");
  for (int s = 0; s <= grid * grid; ++s) {
    auto v = is_rigid(r, ctx->omega(s));
    if (v.verdict != Verdict::holds) {
      rep.pass = false;
      rep.counterexample = v.witness ? v.witness->str() : "?";
      rep.note = "NotRigid: omega_" + std::to_string(s) + " has a*omega(a) = 0 at " + *rep.counterexample;
      return rep;
    }
  }
  rep.exhaustive = true;
  auto u = r->universe();
  auto w = [&](int s, const Element& x) { return ctx->apply(Rational(s), x); };
  auto fail = [&](const std::string& lemma, const Element& a, const Element& b, const std::string& where) {
    rep.pass = false;
    rep.counterexample = lemma + " a=" + a.str() + " b=" + b.str() + " " + where;
    return rep;
  };
  for (const auto& a : u)
    for (const auto& b : u) {
      bool ab_zero = (a * b).is_zero();
      for (int s = 0; s <= grid; ++s) {
        for (int n = 1; n <= grid; ++n) {
          ++rep.checked;
          bool twisted_zero = (a * w(n * s, b)).is_zero() && (w(n * s, a) * b).is_zero();
          std::string where = "s=" + std::to_string(s) + " n=" + std::to_string(n);
          if (ab_zero && !twisted_zero) return fail("jav-1", a, b, where);
          if (twisted_zero && !ab_zero) return fail("jav-2", a, b, where);
        }
        if (!w(s, a * b).is_zero()) continue;
        for (int s2 = 0; s2 <= grid; ++s2) {
          ++rep.checked;
          if (!(w(s + s2, a) * w(s, b)).is_zero())
            return fail("kav", a, b, "s=" + std::to_string(s) + " s'=" + std::to_string(s2));
        }
      }
    }
  return rep;
}

// ---------------------------------------------------------------- unit search

struct UnitSearchResult {
  bool found = false;
  std::optional<TwistedPoly> inverse;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  int poly_degree = 0;
  int coeff_degree = 0;
  Side side = Side::right;
};

/// Searches h in A[x; alpha] with deg_x h <= poly_degree and coefficients
/// spanned by normal words of degree <= coeff_degree such that g h = 1
/// (Side::right) or h g = 1 (Side::left). Exact linear algebra: "not found"
/// proves there is no inverse inside that box.
inline UnitSearchResult bounded_unit_search(const TwistedPoly& g, int poly_degree, int coeff_degree, Side side) {
  const auto& ctx = g.context();
  const auto& alg = as_algebra(ctx->ring());
  auto words = alg.normal_words(coeff_degree);
  UnitSearchResult out;
  out.poly_degree = poly_degree;
  out.coeff_degree = coeff_degree;
  out.side = side;
  out.unknowns = words.size() * static_cast<std::size_t>(poly_degree + 1);
  std::map<std::pair<std::int64_t, Word>, std::size_t> row_of;
  std::vector<SparseVec> rows;
  auto col_of = [&](int j, std::size_t w) { return static_cast<std::size_t>(j) * words.size() + w; };
  for (int j = 0; j <= poly_degree; ++j)
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      TwistedPoly unknown = TwistedPoly::monomial(ctx, alg.monomial(words[wi]), j);
      TwistedPoly prod = side == Side::right ? g * unknown : unknown * g;
      for (const auto& [d, c] : prod.coeffs())
        for (const auto& [word, coef] : QuotientAlgebra::poly_of(c)) {
          auto [it, fresh] = row_of.try_emplace({d, word}, rows.size());
          if (fresh) rows.emplace_back();
          rows[it->second][col_of(j, wi)] = coef;
        }
    }
  // right-hand side: 1 at (degree 0, empty word)
  auto [it, fresh] = row_of.try_emplace({0, Word{}}, rows.size());
  if (fresh) rows.emplace_back();
  std::vector<Rational> rhs(rows.size(), 0);
  rhs[it->second] = 1;
  out.equations = rows.size();
  auto sol = solve_linear(rows, rhs, out.unknowns, alg.field());
  if (!sol) return out;
  std::map<std::int64_t, Element> coeffs;
  for (const auto& [col, c] : *sol) {
    int j = static_cast<int>(col / words.size());
    Element term = alg.monomial(words[col % words.size()], c);
    auto [ci, cfresh] = coeffs.try_emplace(j, term);
    if (!cfresh) ci->second += term;
  }
  out.found = true;
  out.inverse = TwistedPoly(ctx, coeffs);
  return out;
}

}  // namespace sgps
