#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <set>

#include "sgps/monoid.hpp"
#include "sgps/ring_core.hpp"

namespace sgps {

enum class OmegaRule { identity, power, table };

/// The triple (R, S, omega). omega is the identity, s -> alpha^s for integer
/// exponents, or an explicit table (exponents missing from it act trivially
/// only at 0).
class SkewContext : public std::enable_shared_from_this<SkewContext> {
 public:
  SkewContext(RingHandle ring, MonoidHandle monoid, EndoHandle base)
      : ring_(std::move(ring)), monoid_(std::move(monoid)), base_(std::move(base)) {
    if (!base_ || base_->is_identity()) {
      rule_ = OmegaRule::identity;
    } else {
      rule_ = OmegaRule::power;
      if (!monoid_->integral())
        throw Error(ErrorCode::UnsupportedMonoid, "omega_s = alpha^s needs integer exponents, not " + monoid_->name());
      if (base_->domain() != ring_) throw Error(ErrorCode::MixedRings, "twist is an endomorphism of another ring");
    }
  }

  SkewContext(RingHandle ring, MonoidHandle monoid, std::map<Rational, EndoHandle> table)
      : ring_(std::move(ring)), monoid_(std::move(monoid)), rule_(OmegaRule::table), table_(std::move(table)) {
    for (const auto& [s, e] : table_) {
      monoid_->check(s);
      if (e->domain() != ring_) throw Error(ErrorCode::MixedRings, "omega table entry on another ring");
    }
  }

  const RingHandle& ring() const noexcept { return ring_; }
  const MonoidHandle& monoid() const noexcept { return monoid_; }
  OmegaRule rule() const noexcept { return rule_; }
  const EndoHandle& base() const noexcept { return base_; }

  std::string describe() const {
    std::string w = rule_ == OmegaRule::identity ? "id" : rule_ == OmegaRule::power ? base_->describe() : "table";
    return ring_->name() + "[[" + monoid_->name() + "; " + w + "]]";
  }

  bool twist_trivial_at(const Rational& s) const {
    return rule_ == OmegaRule::identity || s == 0 || omega(s)->is_identity();
  }

  EndoHandle omega(const Rational& s) const {
    monoid_->check(s);
    if (rule_ == OmegaRule::identity || s == 0) return identity();
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    EndoHandle e;
    if (rule_ == OmegaRule::power) {
      e = signed_power(base_, to_int64(s));
    } else {
      auto t = table_.find(s);
      if (t == table_.end())
        throw Error(ErrorCode::InvalidArgument, "omega table has no entry for " + to_string(s));
      e = t->second;
    }
    cache_.emplace(s, e);
    return e;
  }

  Element apply(const Rational& s, const Element& r) const {
    if (rule_ == OmegaRule::identity || s == 0) return r;
    return omega(s)->apply(r);
  }

 private:
  EndoHandle identity() const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!id_) id_ = identity_endo(ring_);
    return id_;
  }

  RingHandle ring_;
  MonoidHandle monoid_;
  OmegaRule rule_ = OmegaRule::identity;
  EndoHandle base_;
  std::map<Rational, EndoHandle> table_;
  mutable std::mutex mutex_;
  mutable EndoHandle id_;
  mutable std::map<Rational, EndoHandle> cache_;
};

using ContextHandle = std::shared_ptr<const SkewContext>;

inline ContextHandle make_context(RingHandle r, MonoidHandle m, EndoHandle base = nullptr) {
  return std::make_shared<SkewContext>(std::move(r), std::move(m), std::move(base));
}

/// Samples omega(s+t) = omega(s) o omega(t) and omega(0) = id on ring elements.
inline bool validate_omega(const SkewContext& ctx, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Rational s = ctx.monoid()->random(rng), t = ctx.monoid()->random(rng);
    Element r = ctx.ring()->random(rng);
    if (ctx.apply(0, r) != r) return false;
    if (ctx.apply(s + t, r) != ctx.apply(s, ctx.apply(t, r))) return false;
  }
  return true;
}

struct SeriesTerm {
  Rational exponent;
  Element coefficient;
};

/// Finite-support element of R[[S, omega]], terms ascending and zero-free.
/// With a cutoff T the coefficients at exponents > T are unknown.
class Series {
 public:
  Series() = default;

  Series(ContextHandle ctx, std::vector<SeriesTerm> terms, std::optional<Rational> trunc = std::nullopt)
      : ctx_(std::move(ctx)), trunc_(std::move(trunc)) {
    std::map<Rational, Element> acc;
    for (auto& t : terms) {
      ctx_->monoid()->check(t.exponent);
      if (t.coefficient.ring() != ctx_->ring())
        throw Error(ErrorCode::MixedRings, "coefficient " + t.coefficient.str() + " is not in " + ctx_->ring()->name());
      auto [it, fresh] = acc.try_emplace(t.exponent, t.coefficient);
      if (!fresh) it->second += t.coefficient;
    }
    if (trunc_) ctx_->monoid()->check(*trunc_);
    for (auto& [s, c] : acc) {
      if (c.is_zero() || (trunc_ && *trunc_ < s)) continue;
      terms_.push_back({s, std::move(c)});
    }
  }

  const ContextHandle& context() const noexcept { return ctx_; }
  const std::vector<SeriesTerm>& terms() const noexcept { return terms_; }
  const std::optional<Rational>& trunc() const noexcept { return trunc_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Element coefficient(const Rational& s) const {
    for (const auto& t : terms_)
      if (t.exponent == s) return t.coefficient;
    return ctx_->ring()->zero();
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      bool unit_coef = t.coefficient.is_one();
      if (t.exponent == 0) out += "c(" + t.coefficient.str() + ")";
      else if (unit_coef) out += "e(" + to_string(t.exponent) + ")";
      else out += "c(" + t.coefficient.str() + ")*e(" + to_string(t.exponent) + ")";
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : terms_) terms.push_back({{"c", t.coefficient.to_json()}, {"e", to_string(t.exponent)}});
    nlohmann::json out{{"terms", terms}, {"text", str()}};
    out["trunc"] = trunc_ ? nlohmann::json(to_string(*trunc_)) : nlohmann::json(nullptr);
    return out;
  }

  /// Equality of known coefficients and cutoffs.
  friend bool operator==(const Series& a, const Series& b) {
    if (a.ctx_ != b.ctx_ || a.trunc_ != b.trunc_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].exponent != b.terms_[i].exponent || a.terms_[i].coefficient != b.terms_[i].coefficient)
        return false;
    return true;
  }

 private:
  ContextHandle ctx_;
  std::vector<SeriesTerm> terms_;
  std::optional<Rational> trunc_;
};

inline std::optional<Rational> min_trunc(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

inline void require_same_context(const Series& f, const Series& g) {
  if (!f.context() || f.context() != g.context())
    throw Error(ErrorCode::ContextMismatch, "series belong to different contexts");
}

inline Series series_make(const ContextHandle& ctx, std::vector<SeriesTerm> terms,
                          std::optional<Rational> trunc = std::nullopt) {
  return Series(ctx, std::move(terms), std::move(trunc));
}

/// c_r: r at exponent 0.
inline Series series_c(const ContextHandle& ctx, const Element& r) { return Series(ctx, {{Rational(0), r}}); }

/// e_s: 1 at exponent s.
inline Series series_e(const ContextHandle& ctx, const Rational& s) {
  return Series(ctx, {{s, ctx->ring()->one()}});
}

inline Series series_truncate(const Series& f, const Rational& t) {
  return Series(f.context(), f.terms(), min_trunc(f.trunc(), t));
}

inline Series series_add(const Series& f, const Series& g) {
  require_same_context(f, g);
  auto terms = f.terms();
  terms.insert(terms.end(), g.terms().begin(), g.terms().end());
  return Series(f.context(), std::move(terms), min_trunc(f.trunc(), g.trunc()));
}

inline Series series_neg(const Series& f) {
  auto terms = f.terms();
  for (auto& t : terms) t.coefficient = -t.coefficient;
  return Series(f.context(), std::move(terms), f.trunc());
}

inline Series series_sub(const Series& f, const Series& g) { return series_add(f, series_neg(g)); }

/// Cutoff of a product. The minimum of both cutoffs, further lowered for
/// kinds with negative exponents so that no unknown term leaks below it.
inline std::optional<Rational> product_trunc(const Series& f, const Series& g) {
  auto t = min_trunc(f.trunc(), g.trunc());
  if (!t || f.context()->monoid()->nonnegative()) return t;
  auto low = [](const Series& h) -> std::optional<Rational> {
    if (h.is_zero()) return h.trunc();
    return h.trunc() ? std::min(h.terms().front().exponent, *h.trunc()) : h.terms().front().exponent;
  };
  if (f.trunc()) {
    if (auto lg = low(g)) t = std::min(*t, *f.trunc() + *lg);
  }
  if (g.trunc()) {
    if (auto lf = low(f)) t = std::min(*t, *g.trunc() + *lf);
  }
  return t;
}

/// fg(s) = sum over u+v = s of f(u) * omega_u(g(v)).
inline Series series_mul(const Series& f, const Series& g) {
  require_same_context(f, g);
  const auto& ctx = *f.context();
  auto trunc = product_trunc(f, g);
  std::map<Rational, Element> acc;
  for (const auto& [u, fu] : f.terms()) {
    for (const auto& [v, gv] : g.terms()) {
      Rational s = u + v;
      if (trunc && *trunc < s) continue;
      Element term = fu * ctx.apply(u, gv);
      auto [it, fresh] = acc.try_emplace(s, term);
      if (!fresh) it->second += term;
    }
  }
  std::vector<SeriesTerm> terms;
  for (auto& [s, c] : acc) terms.push_back({s, std::move(c)});
  return Series(f.context(), std::move(terms), trunc);
}

inline Series operator+(const Series& f, const Series& g) { return series_add(f, g); }
inline Series operator-(const Series& f, const Series& g) { return series_sub(f, g); }
inline Series operator-(const Series& f) { return series_neg(f); }
inline Series operator*(const Series& f, const Series& g) { return series_mul(f, g); }

/// (pi(f), f(pi(f))).
inline SeriesTerm series_pi(const Series& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroSeries, "pi of the zero series");
  return f.terms().front();
}

/// Exponents reachable from 0 by adding positive support elements, up to cutoff.
inline std::vector<Rational> additive_closure(const std::vector<Rational>& steps, const Rational& cutoff,
                                              std::size_t limit = 200000) {
  std::set<Rational> seen{Rational(0)};
  std::vector<Rational> frontier{Rational(0)};
  while (!frontier.empty()) {
    std::vector<Rational> next;
    for (const auto& s : frontier)
      for (const auto& u : steps) {
        Rational t = s + u;
        if (cutoff < t || !seen.insert(t).second) continue;
        if (seen.size() > limit) throw Error(ErrorCode::ParameterRange, "exponent grid too large for this cutoff");
        next.push_back(t);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// Inverse up to the cutoff by leading-term recursion:
/// g(0) = f(0)^-1, g(t) = f(0)^-1 * (delta_t - sum_{u>0} f(u) omega_u(g(t-u))).
inline Series series_invert(const Series& f, const Rational& cutoff) {
  const auto& ctx = f.context();
  if (!ctx->monoid()->nonnegative())
    throw Error(ErrorCode::UnsupportedMonoid, "inversion needs Nat or QNonNeg exponents, not " + ctx->monoid()->name());
  if (f.is_zero()) throw Error(ErrorCode::ZeroSeries, "the zero series has no inverse");
  auto [p, a] = series_pi(f);
  if (p != 0) throw Error(ErrorCode::NonZeroLeadingExponent, "pi(f) = " + to_string(p) + ", not 0");
  auto ua = is_unit(a);
  if (ua.decision != Decision::yes)
    throw Error(ErrorCode::NonUnitLeadingCoefficient,
                "f(0) = " + a.str() + (ua.decision == Decision::no ? " is not a unit" : " has undecidable unit status"));
  Rational t_cut = f.trunc() ? std::min(*f.trunc(), ctx->monoid()->check(cutoff)) : ctx->monoid()->check(cutoff);
  std::vector<Rational> steps;
  for (const auto& t : f.terms())
    if (t.exponent != 0) steps.push_back(t.exponent);
  auto grid = additive_closure(steps, t_cut);
  const Element& ainv = *ua.inverse;
  std::map<Rational, Element> g;
  for (const auto& t : grid) {
    Element rhs = t == 0 ? ctx->ring()->one() : ctx->ring()->zero();
    for (const auto& [u, fu] : f.terms()) {
      if (u == 0 || t < u) continue;
      auto it = g.find(t - u);
      if (it != g.end()) rhs -= fu * ctx->apply(u, it->second);
    }
    g.emplace(t, ainv * rhs);
  }
  std::vector<SeriesTerm> terms;
  for (auto& [s, c] : g) terms.push_back({s, std::move(c)});
  Series inv(ctx, std::move(terms), t_cut);
  Series one = series_truncate(series_c(ctx, ctx->ring()->one()), t_cut);
  if (series_mul(inv, f) != one)
    throw Error(ErrorCode::NotComputable, "right inverse of f is not a left inverse up to the cutoff");
  return inv;
}

struct DivisibilityResult {
  Decision verdict = Decision::unknown;
  std::optional<Series> witness;
  std::size_t steps = 0;
  std::string reason;

  nlohmann::json to_json() const {
    nlohmann::json j{{"verdict", to_string(verdict)}, {"steps", steps}, {"reason", reason}};
    j["witness"] = witness ? witness->to_json() : nlohmann::json(nullptr);
    return j;
  }
};

namespace detail {

/// All x with c * omega_p(x) = rhs (right) or x * omega_p(c) = rhs (left).
inline std::optional<std::vector<Element>> coefficient_solutions(const SkewContext& ctx, const Element& c,
                                                                 const Rational& p, const Element& rhs,
                                                                 Side side) {
  const Ring& r = *ctx.ring();
  std::vector<Element> out;
  if (side == Side::left) {
    Element cp = ctx.apply(p, c);
    auto sols = r.solve_mul(cp.payload(), rhs.payload(), Side::left);
    if (!sols) return std::nullopt;
    for (auto& s : *sols) out.push_back(r.wrap(std::move(s)));
    return out;
  }
  auto ys = r.solve_mul(c.payload(), rhs.payload(), Side::right);
  if (!ys) return std::nullopt;
  if (ctx.twist_trivial_at(p)) {
    for (auto& y : *ys) out.push_back(r.wrap(std::move(y)));
    return out;
  }
  if (!r.enumerable()) return std::nullopt;
  std::set<Payload> targets(ys->begin(), ys->end());
  for (const auto& x : r.universe())
    if (targets.count(ctx.apply(p, x).payload())) out.push_back(x);
  return out;
}

}  // namespace detail

/// Decides f in gA (Side::right: g*h = f) or f in Ag (Side::left: h*g = f).
/// Exponents of h are drawn from the finite grid closed under the support
/// equations; targets are peeled in ascending order with backtracking over
/// every coefficient solution. "no" means every branch was refuted.
inline DivisibilityResult series_divide(const Series& f, const Series& g, Side side, std::size_t budget) {
  require_same_context(f, g);
  const auto& ctx = f.context();
  DivisibilityResult out;
  auto t_cut = min_trunc(f.trunc(), g.trunc());
  if (f.is_zero()) {
    out.verdict = Decision::yes;
    out.witness = Series(ctx, {}, t_cut);
    out.reason = "f = 0";
    return out;
  }
  if (g.is_zero()) {
    out.verdict = Decision::no;
    out.reason = "g = 0 but f != 0";
    return out;
  }
  if (!ctx->monoid()->nonnegative()) {
    out.reason = "UnsupportedMonoid: support arithmetic needs Nat or QNonNeg";
    return out;
  }
  const Rational pg = g.terms().front().exponent;
  const Element& cg = g.terms().front().coefficient;
  const Rational pf = f.terms().front().exponent;
  if (pf < pg) {
    out.verdict = Decision::no;
    out.reason = "pi(f) = " + to_string(pf) + " < pi(g) = " + to_string(pg);
    return out;
  }
  // Exact mode: solve up to max supp f, then require the overflow to vanish.
  const bool exact = !t_cut.has_value();
  const Rational horizon = exact ? f.terms().back().exponent : *t_cut;

  std::set<Rational> targets, grid;
  for (const auto& t : f.terms())
    if (!(horizon < t.exponent)) targets.insert(t.exponent);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : std::vector<Rational>(targets.begin(), targets.end()))
      for (const auto& s : g.terms())
        if (!(t < s.exponent) && grid.insert(t - s.exponent).second) changed = true;
    for (const auto& d : grid)
      for (const auto& s : g.terms()) {
        Rational t = d + s.exponent;
        if (!(horizon < t) && targets.insert(t).second) changed = true;
      }
    if (targets.size() + grid.size() > 100000) {
      out.reason = "exponent grid exceeds 100000 points";
      return out;
    }
  }
  std::vector<Rational> order(targets.begin(), targets.end());
  std::map<Rational, Element> h;
  bool budget_hit = false;
  bool unsolvable_step = false;
  bool consistent_leaf = false;

  auto product_term = [&](const Rational& d, const Element& hd, const SeriesTerm& s) {
    return side == Side::right ? s.coefficient * ctx->apply(s.exponent, hd) : hd * ctx->apply(d, s.coefficient);
  };
  auto build = [&]() {
    std::vector<SeriesTerm> terms;
    for (const auto& [d, c] : h) terms.push_back({d, c});
    return Series(ctx, std::move(terms), t_cut);
  };

  std::function<std::optional<Series>(std::size_t)> dfs = [&](std::size_t idx) -> std::optional<Series> {
    if (++out.steps > budget) {
      budget_hit = true;
      return std::nullopt;
    }
    if (idx == order.size()) {
      Series cand = build();
      Series prod = side == Side::right ? series_mul(g, cand) : series_mul(cand, g);
      if (!exact) return prod == f ? std::optional<Series>(cand) : std::nullopt;
      consistent_leaf = true;
      return prod == f ? std::optional<Series>(cand) : std::nullopt;
    }
    const Rational& t = order[idx];
    Element rhs = f.coefficient(t);
    for (const auto& s : g.terms()) {
      if (s.exponent == pg || t < s.exponent) continue;
      auto it = h.find(t - s.exponent);
      if (it != h.end()) rhs -= product_term(it->first, it->second, s);
    }
    if (t < pg) {
      if (!rhs.is_zero()) unsolvable_step = true;
      return rhs.is_zero() ? dfs(idx + 1) : std::nullopt;
    }
    Rational d = t - pg;
    auto sols = detail::coefficient_solutions(*ctx, cg, side == Side::right ? pg : d, rhs, side);
    if (!sols) {
      budget_hit = true;  // coefficient equation not decidable here
      return std::nullopt;
    }
    if (sols->empty()) unsolvable_step = true;
    for (const auto& x : *sols) {
      if (x.is_zero()) h.erase(d);
      else h[d] = x;
      if (auto found = dfs(idx + 1)) return found;
      h.erase(d);
      if (budget_hit) return std::nullopt;
    }
    return std::nullopt;
  };

  auto found = dfs(0);
  if (found) {
    out.verdict = Decision::yes;
    out.witness = *found;
    out.reason = "witness replays exactly";
    return out;
  }
  if (budget_hit) {
    out.reason = "search budget exhausted or coefficient equation undecidable";
    return out;
  }
  if (exact && consistent_leaf) {
    out.reason = "solutions exist up to exponent " + to_string(horizon) + " but none is exact";
    return out;
  }
  out.verdict = Decision::no;
  out.reason = unsolvable_step ? "coefficient equations unsolvable on every branch" : "no branch is consistent";
  return out;
}

inline DivisibilityResult series_divide_right(const Series& f, const Series& g, std::size_t budget = 100000) {
  return series_divide(f, g, Side::right, budget);
}
inline DivisibilityResult series_divide_left(const Series& f, const Series& g, std::size_t budget = 100000) {
  return series_divide(f, g, Side::left, budget);
}

/// Random series with at most `terms` terms and exponents in a small grid.
inline Series random_series(const ContextHandle& ctx, Rng& rng, int max_terms,
                            std::optional<Rational> trunc = std::nullopt) {
  std::uniform_int_distribution<int> count(0, max_terms);
  std::uniform_int_distribution<int> num(ctx->monoid()->nonnegative() ? 0 : -4, 8);
  std::uniform_int_distribution<int> den_pick(0, 2);
  const int dens[] = {1, 2, 4};
  std::vector<SeriesTerm> terms;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Rational s = ctx->monoid()->integral() ? Rational(num(rng)) : Rational(num(rng), dens[den_pick(rng)]);
    terms.push_back({s, ctx->ring()->random(rng)});
  }
  return Series(ctx, std::move(terms), std::move(trunc));
}

}  // namespace sgps
