#pragma once

#include <limits>
#include <set>

#include "sgps/algebra.hpp"
#include "sgps/linalg.hpp"
#include "sgps/ring.hpp"

namespace sgps {

struct UnitVerdict {
  Decision decision = Decision::unknown;
  std::optional<Element> inverse;
};

/// Two-sided unit test. Structural tests first, then exhaustion of the
/// universe; anything else is Decision::unknown (undecidable here).
inline UnitVerdict is_unit(const Element& a) {
  const Ring& r = *a.ring();
  auto s = r.structural_unit(a.payload());
  if (s.decision == Decision::yes && s.inverse) {
    Element b = r.wrap(*s.inverse);
    if ((a * b).is_one() && (b * a).is_one()) return {Decision::yes, b};
  } else if (s.decision == Decision::no) {
    return {Decision::no, std::nullopt};
  }
  if (!r.enumerable()) return {Decision::unknown, std::nullopt};
  auto right = r.solve_mul(a.payload(), r.one_payload(), Side::right);
  if (right) {
    for (const auto& p : *right) {
      Element b = r.wrap(p);
      if ((b * a).is_one()) return {Decision::yes, b};
    }
  }
  return {Decision::no, std::nullopt};
}

struct EndoCheck {
  bool ok = true;
  bool exhaustive = false;
  std::size_t checked = 0;
  std::string law;  // violated law, empty when ok
  std::vector<Element> counterexample;
};

/// Homomorphism law for alpha: alpha(1) = 1, additivity and multiplicativity,
/// over all pairs when the universe is small, else over seeded samples.
inline EndoCheck validate_endomorphism(const Endomorphism& alpha, std::size_t samples = 1000,
                                       std::uint64_t seed = 1) {
  const auto& r = alpha.domain();
  EndoCheck out;
  if (!alpha(r->one()).is_one()) {
    out.ok = false;
    out.law = "alpha(1) = 1";
    out.counterexample = {r->one()};
    return out;
  }
  auto check_pair = [&](const Element& a, const Element& b) {
    ++out.checked;
    if (alpha(a + b) != alpha(a) + alpha(b)) {
      out.ok = false;
      out.law = "alpha(a+b) = alpha(a)+alpha(b)";
    } else if (alpha(a * b) != alpha(a) * alpha(b)) {
      out.ok = false;
      out.law = "alpha(ab) = alpha(a)alpha(b)";
    }
    if (!out.ok) out.counterexample = {a, b};
    return out.ok;
  };
  if (r->enumerable()) {
    auto u = r->universe();
    if (u.size() * u.size() <= kEnumerationLimit) {
      out.exhaustive = true;
      for (const auto& a : u)
        for (const auto& b : u)
          if (!check_pair(a, b)) return out;
      return out;
    }
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i)
    if (!check_pair(r->random(rng), r->random(rng))) return out;
  return out;
}

inline void require_endomorphism(const Endomorphism& alpha) {
  auto check = validate_endomorphism(alpha);
  if (!check.ok) {
    std::string args;
    for (const auto& e : check.counterexample) args += (args.empty() ? "" : ", ") + e.str();
    throw Error(ErrorCode::NotEndomorphism, alpha.describe() + " violates " + check.law + " at (" + args + ")");
  }
}

/// Left annihilator {a : aX = 0} (Side::left) or right annihilator {a : Xa = 0}.
/// Enumerable rings give the explicit element set; quotient algebras with a
/// finite monomial basis give a linear basis.
struct Annihilator {
  bool is_basis = false;
  std::vector<Element> elements;
};

inline Annihilator annihilator(const RingHandle& r, const std::vector<Element>& xs, Side side) {
  for (const auto& x : xs)
    if (x.ring() != r) throw Error(ErrorCode::MixedRings, "annihilator set outside " + r->name());
  auto kills = [&](const Element& a) {
    for (const auto& x : xs)
      if (!(side == Side::left ? a * x : x * a).is_zero()) return false;
    return true;
  };
  if (r->enumerable()) {
    Annihilator out;
    for (const auto& a : r->universe())
      if (kills(a)) out.elements.push_back(a);
    return out;
  }
  auto* alg = dynamic_cast<const QuotientAlgebra*>(r.get());
  if (alg == nullptr || !alg->finite_basis())
    throw Error(ErrorCode::NotComputable, "annihilator needs an enumerable ring or a finite monomial basis");
  auto basis = alg->normal_words(alg->policy().degree_cap.value_or(64));
  std::map<std::pair<std::size_t, Word>, std::size_t> row_of;
  std::vector<SparseVec> rows;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    Element w = alg->monomial(basis[col]);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      Element prod = side == Side::left ? w * xs[k] : xs[k] * w;
      for (const auto& [word, c] : QuotientAlgebra::poly_of(prod)) {
        auto [it, fresh] = row_of.try_emplace({k, word}, rows.size());
        if (fresh) rows.emplace_back();
        rows[it->second][col] = c;
      }
    }
  }
  Annihilator out;
  out.is_basis = true;
  for (const auto& v : kernel_basis(rows, basis.size(), alg->field())) {
    Poly p;
    for (const auto& [col, c] : v) p[basis[col]] = c;
    out.elements.push_back(alg->from_poly(p));
  }
  return out;
}

inline Annihilator annihilator_left(const RingHandle& r, const std::vector<Element>& xs) {
  return annihilator(r, xs, Side::left);
}
inline Annihilator annihilator_right(const RingHandle& r, const std::vector<Element>& xs) {
  return annihilator(r, xs, Side::right);
}

enum class Verdict { holds, fails, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

/// Least k >= 1 with a^k = 0, scanning at most `bound` powers (0 = not found).
/// On enumerable rings the scan stops early once powers start repeating.
inline int nilpotency_index(const Element& a, int bound) {
  if (a.is_zero()) return 1;
  std::set<Element> seen;
  Element p = a;
  for (int k = 1; k <= bound; ++k) {
    if (p.is_zero()) return k;
    if (a.ring()->enumerable() && !seen.insert(p).second) return 0;
    p = p * a;
  }
  return 0;
}

/// Small candidates of a quotient algebra: monomials, then two-term sums
/// w1 + c*w2 (c = 1, -1), normal words of degree 1..degree_bound in deg-lex order.
inline std::vector<Element> algebra_candidates(const QuotientAlgebra& alg, int degree_bound, std::size_t limit) {
  auto words = alg.normal_words(degree_bound);
  words.erase(words.begin());  // drop the empty word
  std::vector<Element> out;
  for (const auto& w : words) out.push_back(alg.monomial(w));
  std::vector<Rational> signs{1};
  if (alg.field().characteristic() != 2) signs.push_back(-1);
  for (std::size_t i = 0; i < words.size() && out.size() < limit; ++i)
    for (std::size_t j = i + 1; j < words.size() && out.size() < limit; ++j)
      for (const auto& c : signs) {
        Poly p;
        p[words[i]] = 1;
        p[words[j]] = c;
        out.push_back(alg.from_poly(p));
      }
  return out;
}

struct ReducedVerdict {
  Verdict verdict = Verdict::inconclusive;  // holds = reduced
  std::optional<Element> witness;
  int exponent = 0;
  std::string reason;
};

/// Structural proof of reducedness for monomial presentations without a cap:
/// square-free commutative monomial relations, or (noncommutatively) all
/// mixed products x_i x_j (i != j) killed, so the normal words are powers
/// of single variables and the algebra embeds into a product of k[t].
inline std::optional<std::string> reduced_by_structure(const QuotientAlgebra& alg) {
  const auto& rs = alg.rewrite_system();
  if (alg.policy().degree_cap || !rs.monomial()) return std::nullopt;
  if (rs.commutative()) {
    for (const auto& r : rs.rules())
      for (std::size_t i = 1; i < r.lhs.size(); ++i)
        if (r.lhs[i] == r.lhs[i - 1]) return std::nullopt;
    return "square-free monomial relations";
  }
  std::set<std::pair<std::uint16_t, std::uint16_t>> killed;
  for (const auto& r : rs.rules()) {
    if (r.lhs.size() != 2 || r.lhs[0] == r.lhs[1]) return std::nullopt;
    killed.emplace(r.lhs[0], r.lhs[1]);
  }
  auto n = static_cast<std::size_t>(alg.num_vars());
  if (killed.size() != n * (n - 1)) return std::nullopt;
  return "normal words are powers of single variables";
}

inline ReducedVerdict is_reduced(const RingHandle& r, int search_bound = 8, int degree_bound = 3,
                                 const std::vector<Element>& hints = {}) {
  ReducedVerdict out;
  auto try_candidate = [&](const Element& a) {
    if (a.is_zero()) return false;
    int k = nilpotency_index(a, search_bound);
    if (k == 0) return false;
    out.verdict = Verdict::fails;
    out.witness = a;
    out.exponent = k;
    out.reason = "nonzero nilpotent";
    return true;
  };
  if (r->enumerable()) {
    for (const auto& a : r->universe())
      if (!a.is_zero() && nilpotency_index(a, std::numeric_limits<int>::max()) > 0) {
        out.verdict = Verdict::fails;
        out.witness = a;
        out.exponent = nilpotency_index(a, std::numeric_limits<int>::max());
        out.reason = "nonzero nilpotent";
        return out;
      }
    out.verdict = Verdict::holds;
    out.reason = "universe exhausted";
    return out;
  }
  for (const auto& h : hints)
    if (try_candidate(h)) return out;
  auto* alg = dynamic_cast<const QuotientAlgebra*>(r.get());
  if (alg == nullptr) {
    out.reason = "no finite universe and no structural test";
    return out;
  }
  if (auto why = reduced_by_structure(*alg)) {
    out.verdict = Verdict::holds;
    out.reason = *why;
    return out;
  }
  for (const auto& a : algebra_candidates(*alg, degree_bound, 20000))
    if (try_candidate(a)) return out;
  out.reason = "no nilpotent among candidates of degree <= " + std::to_string(degree_bound);
  return out;
}

struct RigidVerdict {
  Verdict verdict = Verdict::inconclusive;  // holds = rigid
  std::optional<Element> witness;
  bool exhaustive = false;
  std::string reason;
};

/// Rigidity of alpha: a*alpha(a) = 0 only for a = 0. Hints are tried first.
inline RigidVerdict is_rigid(const RingHandle& r, const EndoHandle& alpha, const std::vector<Element>& hints = {},
                             int degree_bound = 2) {
  if (alpha->domain() != r) throw Error(ErrorCode::MixedRings, "endomorphism of another ring");
  require_endomorphism(*alpha);
  RigidVerdict out;
  auto try_candidate = [&](const Element& a) {
    if (a.is_zero() || !(a * (*alpha)(a)).is_zero()) return false;
    out.verdict = Verdict::fails;
    out.witness = a;
    out.reason = "a*alpha(a) = 0 with a != 0";
    return true;
  };
  for (const auto& h : hints)
    if (try_candidate(h)) return out;
  if (r->enumerable()) {
    for (const auto& a : r->universe())
      if (try_candidate(a)) return out;
    out.verdict = Verdict::holds;
    out.exhaustive = true;
    out.reason = "universe exhausted";
    return out;
  }
  if (auto* alg = dynamic_cast<const QuotientAlgebra*>(r.get())) {
    for (const auto& a : algebra_candidates(*alg, degree_bound, 20000))
      if (try_candidate(a)) return out;
  }
  out.reason = "no witness among bounded candidates";
  return out;
}

struct NonunitVerdict {
  Decision decision = Decision::unknown;
  std::optional<Element> witness;  // nonunit a with alpha(a) a unit
};

inline NonunitVerdict preserves_nonunits(const RingHandle& r, const EndoHandle& alpha) {
  if (alpha->domain() != r) throw Error(ErrorCode::MixedRings, "endomorphism of another ring");
  if (alpha->is_identity()) return {Decision::yes, std::nullopt};
  if (!r->enumerable()) return {};
  require_endomorphism(*alpha);
  for (const auto& a : r->universe()) {
    auto ua = is_unit(a);
    if (ua.decision != Decision::no) continue;
    if (is_unit((*alpha)(a)).decision == Decision::yes) return {Decision::no, a};
  }
  return {Decision::yes, std::nullopt};
}

}  // namespace sgps
