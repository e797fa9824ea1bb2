#pragma once

#include <map>
#include <set>

#include "sgps/ring_core.hpp"

namespace sgps {

/// (R, alpha) for R[x; alpha] (laurent = false) or R[x, x^-1; alpha].
class TwistContext {
 public:
  TwistContext(RingHandle ring, EndoHandle alpha, bool laurent)
      : ring_(std::move(ring)), alpha_(std::move(alpha)), laurent_(laurent) {
    if (alpha_->domain() != ring_) throw Error(ErrorCode::MixedRings, "twist is an endomorphism of another ring");
    if (laurent_) {
      auto inv = alpha_->inverse();
      if (!inv)
        throw Error(ErrorCode::NotInvertibleTwist,
                    alpha_->describe() + " has no two-sided inverse on " + ring_->name());
      inverse_ = *inv;
    }
  }

  const RingHandle& ring() const noexcept { return ring_; }
  const EndoHandle& alpha() const noexcept { return alpha_; }
  const EndoHandle& alpha_inverse() const noexcept { return inverse_; }
  bool laurent() const noexcept { return laurent_; }

  /// alpha^n(r) for any integer n (negative only in the Laurent case).
  Element twist(std::int64_t n, const Element& r) const {
    if (n < 0 && !laurent_) throw Error(ErrorCode::NotInvertibleTwist, "negative twist in R[x; alpha]");
    const Endomorphism& e = n >= 0 ? *alpha_ : *inverse_;
    Element out = r;
    for (std::int64_t k = 0; k < (n >= 0 ? n : -n); ++k) out = e.apply(out);
    return out;
  }

  std::string describe() const {
    return ring_->name() + (laurent_ ? "[x,x^-1; " : "[x; ") + alpha_->describe() + "]";
  }

 private:
  RingHandle ring_;
  EndoHandle alpha_;
  EndoHandle inverse_;
  bool laurent_;
};

using TwistHandle = std::shared_ptr<const TwistContext>;

inline TwistHandle make_skew_context(RingHandle r, EndoHandle alpha) {
  return std::make_shared<TwistContext>(std::move(r), std::move(alpha), false);
}
inline TwistHandle make_laurent_context(RingHandle r, EndoHandle alpha) {
  return std::make_shared<TwistContext>(std::move(r), std::move(alpha), true);
}

/// Element of R[x; alpha] or R[x, x^-1; alpha] with x a = alpha(a) x.
class TwistedPoly {
 public:
  TwistedPoly() = default;
  TwistedPoly(TwistHandle ctx, const std::map<std::int64_t, Element>& coeffs) : ctx_(std::move(ctx)) {
    for (const auto& [d, c] : coeffs) {
      if (d < 0 && !ctx_->laurent()) throw Error(ErrorCode::InvalidArgument, "negative degree in R[x; alpha]");
      if (c.ring() != ctx_->ring()) throw Error(ErrorCode::MixedRings, "coefficient outside " + ctx_->ring()->name());
      if (!c.is_zero()) coeffs_.emplace(d, c);
    }
  }

  static TwistedPoly monomial(const TwistHandle& ctx, const Element& c, std::int64_t d) { return {ctx, {{d, c}}}; }
  static TwistedPoly constant(const TwistHandle& ctx, const Element& c) { return monomial(ctx, c, 0); }

  const TwistHandle& context() const noexcept { return ctx_; }
  const std::map<std::int64_t, Element>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Element coefficient(std::int64_t d) const {
    auto it = coeffs_.find(d);
    return it == coeffs_.end() ? ctx_->ring()->zero() : it->second;
  }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [d, c] : coeffs_) {
      if (!out.empty()) out += " + ";
      std::string cs = "(" + c.str() + ")";
      if (d == 0) out += cs;
      else out += (c.is_one() ? "" : cs + "*") + (d == 1 ? std::string("x") : "x^" + std::to_string(d));
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [d, c] : coeffs_) terms.push_back({{"c", c.to_json()}, {"d", d}});
    return {{"terms", terms}, {"text", str()}};
  }

  friend bool operator==(const TwistedPoly& a, const TwistedPoly& b) {
    return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
  }

  friend TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
    check(a, b);
    auto c = a.coeffs_;
    for (const auto& [d, v] : b.coeffs_) {
      auto [it, fresh] = c.try_emplace(d, v);
      if (!fresh) it->second += v;
    }
    return {a.ctx_, c};
  }
  friend TwistedPoly operator-(const TwistedPoly& a) {
    auto c = a.coeffs_;
    for (auto& [d, v] : c) v = -v;
    return {a.ctx_, c};
  }
  friend TwistedPoly operator-(const TwistedPoly& a, const TwistedPoly& b) { return a + (-b); }

  /// sum_{i,j} f_i alpha^i(g_j) x^{i+j}.
  friend TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b) {
    check(a, b);
    std::map<std::int64_t, Element> c;
    for (const auto& [i, fi] : a.coeffs_) {
      for (const auto& [j, gj] : b.coeffs_) {
        Element term = fi * a.ctx_->twist(i, gj);
        auto [it, fresh] = c.try_emplace(i + j, term);
        if (!fresh) it->second += term;
      }
    }
    return {a.ctx_, c};
  }

 private:
  static void check(const TwistedPoly& a, const TwistedPoly& b) {
    if (!a.ctx_ || a.ctx_ != b.ctx_) throw Error(ErrorCode::ContextMismatch, "polynomials over different contexts");
  }

  TwistHandle ctx_;
  std::map<std::int64_t, Element> coeffs_;
};

using SkewPoly = TwistedPoly;
using LaurentPoly = TwistedPoly;

inline TwistedPoly skewpoly_mul(const TwistedPoly& f, const TwistedPoly& g) { return f * g; }
inline TwistedPoly laurent_mul(const TwistedPoly& f, const TwistedPoly& g) { return f * g; }

/// (d_-, d_+): least and greatest degree.
inline std::pair<std::int64_t, std::int64_t> degrees(const TwistedPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPoly, "degrees of the zero polynomial");
  return {f.coeffs().begin()->first, f.coeffs().rbegin()->first};
}

/// Jordan's ring A(R, alpha): pairs (i, r) standing for x^-i r x^i, kept with
/// minimal level. Needs an injective alpha on an enumerable R.
class JordanRing final : public Ring {
 public:
  JordanRing(RingHandle base, EndoHandle alpha) : base_(std::move(base)), alpha_(std::move(alpha)) {
    if (alpha_->domain() != base_) throw Error(ErrorCode::MixedRings, "twist is an endomorphism of another ring");
    if (alpha_->is_identity()) return;
    if (!base_->enumerable())
      throw Error(ErrorCode::PreimageSearchExhausted,
                  "alpha-preimages on " + base_->name() + " cannot be searched exhaustively");
    for (const auto& r : base_->universe()) {
      if (!preimage_.emplace(alpha_->apply(r).payload(), r.payload()).second)
        throw Error(ErrorCode::InvalidArgument, alpha_->describe() + " is not injective on " + base_->name());
    }
    surjective_ = preimage_.size() == base_->universe_payloads().size();
  }

  const RingHandle& base() const noexcept { return base_; }
  const EndoHandle& alpha() const noexcept { return alpha_; }
  bool alpha_surjective() const noexcept { return surjective_; }

  Element make(std::int64_t level, const Element& rep) const {
    if (level < 0) throw Error(ErrorCode::InvalidArgument, "negative Jordan level");
    if (rep.ring() != base_) throw Error(ErrorCode::MixedRings, "Jordan representative outside " + base_->name());
    return wrap(normalize_pair(level, rep));
  }

  /// Raw pair without normalization (for idempotence checks).
  Element make_raw(std::int64_t level, const Element& rep) const {
    return wrap(Leveled{level, std::make_shared<const Element>(rep)});
  }

  static std::int64_t level_of(const Element& a) { return std::get<Leveled>(a.payload()).level; }
  static const Element& rep_of(const Element& a) { return *std::get<Leveled>(a.payload()).rep; }

  Element normalize(const Element& a) const {
    const auto& l = std::get<Leveled>(a.payload());
    return wrap(normalize_pair(l.level, *l.rep));
  }

  std::optional<Element> preimage(const Element& r) const {
    if (alpha_->is_identity()) return r;
    auto it = preimage_.find(r.payload());
    if (it == preimage_.end()) return std::nullopt;
    return base_->wrap(it->second);
  }

  /// Canonical elements of level <= max_level, level by level.
  std::vector<Element> canonical_elements(std::int64_t max_level) const {
    std::vector<Element> out;
    auto u = base_->universe();
    for (const auto& r : u) out.push_back(make(0, r));
    for (std::int64_t i = 1; i <= max_level; ++i)
      for (const auto& r : u)
        if (!preimage(r)) out.push_back(make(i, r));
    return out;
  }

  Element twist(std::int64_t n, const Element& r) const {
    Element out = r;
    for (std::int64_t k = 0; k < n; ++k) out = alpha_->apply(out);
    return out;
  }

  // Ring interface.
  RingKind kind() const override { return RingKind::jordan; }
  std::string name() const override { return "A(" + base_->name() + ", " + alpha_->describe() + ")"; }
  bool enumerable() const override { return base_->enumerable() && surjective_; }
  BigInt characteristic() const override { return base_->characteristic(); }
  Payload zero_payload() const override { return pair(0, base_->zero()); }
  Payload one_payload() const override { return pair(0, base_->one()); }
  Payload add(const Payload& a, const Payload& b) const override {
    const auto& x = std::get<Leveled>(a);
    const auto& y = std::get<Leveled>(b);
    return normalize_pair(x.level + y.level, twist(y.level, *x.rep) + twist(x.level, *y.rep));
  }
  Payload neg(const Payload& a) const override {
    const auto& x = std::get<Leveled>(a);
    return pair(x.level, -*x.rep);
  }
  Payload mul(const Payload& a, const Payload& b) const override {
    const auto& x = std::get<Leveled>(a);
    const auto& y = std::get<Leveled>(b);
    return normalize_pair(x.level + y.level, twist(y.level, *x.rep) * twist(x.level, *y.rep));
  }
  Payload from_integer(const BigInt& n) const override { return pair(0, base_->integer(n)); }
  Payload random_payload(Rng& rng) const override {
    std::uniform_int_distribution<std::int64_t> lvl(0, 3);
    std::int64_t level = lvl(rng);
    return normalize_pair(level, base_->random(rng));
  }
  std::string format(const Payload& a) const override {
    const auto& x = std::get<Leveled>(a);
    if (x.level == 0) return x.rep->str();
    return "x^-" + std::to_string(x.level) + "*(" + x.rep->str() + ")*x^" + std::to_string(x.level);
  }
  nlohmann::json to_json(const Payload& a) const override {
    const auto& x = std::get<Leveled>(a);
    return {{"level", x.level}, {"rep", x.rep->to_json()}};
  }
  std::vector<Payload> universe_payloads() const override {
    if (!enumerable()) return Ring::universe_payloads();
    std::vector<Payload> out;
    for (const auto& r : base_->universe()) out.push_back(pair(0, r));
    return out;
  }
  StructuralUnit structural_unit(const Payload& a) const override {
    const auto& x = std::get<Leveled>(a);
    auto u = is_unit(*x.rep);
    if (u.decision != Decision::yes) return {};
    return {Decision::yes, normalize_pair(x.level, *u.inverse)};
  }

 private:
  static Payload pair(std::int64_t level, const Element& r) {
    return Leveled{level, std::make_shared<const Element>(r)};
  }

  Payload normalize_pair(std::int64_t level, Element rep) const {
    if (rep.is_zero()) return pair(0, rep);
    while (level > 0) {
      auto pre = preimage(rep);
      if (!pre) break;
      rep = *pre;
      --level;
    }
    return pair(level, rep);
  }

  RingHandle base_;
  EndoHandle alpha_;
  std::map<Payload, Payload> preimage_;
  bool surjective_ = true;
};

inline std::shared_ptr<const JordanRing> make_jordan(RingHandle base, EndoHandle alpha) {
  return std::make_shared<JordanRing>(std::move(base), std::move(alpha));
}

inline const JordanRing& as_jordan(const RingHandle& r) {
  auto* j = dynamic_cast<const JordanRing*>(r.get());
  if (j == nullptr) throw Error(ErrorCode::InvalidArgument, r->name() + " is not a Jordan ring");
  return *j;
}

inline Element jordan_normalize(const Element& a) { return as_jordan(a.ring()).normalize(a); }

/// alpha on A(R, alpha): (i, r) -> (i, alpha(r)); an automorphism with
/// inverse (i, r) -> (i + 1, r).
class JordanShiftEndo final : public Endomorphism {
 public:
  JordanShiftEndo(RingHandle jordan, bool inverse) : Endomorphism(std::move(jordan)), inverse_(inverse) {}
  Element apply(const Element& a) const override {
    const auto& j = as_jordan(domain());
    std::int64_t level = JordanRing::level_of(a);
    const Element& r = JordanRing::rep_of(a);
    return inverse_ ? j.make(level + 1, r) : j.make(level, j.alpha()->apply(r));
  }
  std::string describe() const override { return inverse_ ? "alpha_A^-1" : "alpha_A"; }
  bool is_identity() const override { return as_jordan(domain()).alpha()->is_identity(); }
  std::optional<EndoHandle> inverse() const override {
    return std::make_shared<JordanShiftEndo>(domain(), !inverse_);
  }

 private:
  bool inverse_;
};

/// Laurent context A(R, alpha)[x, x^-1; alpha_A].
inline TwistHandle make_jordan_laurent_context(const std::shared_ptr<const JordanRing>& a) {
  return make_laurent_context(a, std::make_shared<JordanShiftEndo>(a, false));
}

/// x^-i r x^j.
struct ConjugateTerm {
  std::int64_t i = 0;
  Element r;
  std::int64_t j = 0;
};

/// Product of formal sums of x^-i r x^j, using x^m s = alpha^m(s) x^m and
/// r x^-m = x^-m alpha^m(r).
inline std::vector<ConjugateTerm> conjugate_mul(const JordanRing& a, const std::vector<ConjugateTerm>& f,
                                                const std::vector<ConjugateTerm>& g) {
  std::vector<ConjugateTerm> out;
  for (const auto& p : f)
    for (const auto& q : g) {
      if (p.j >= q.i) out.push_back({p.i, p.r * a.twist(p.j - q.i, q.r), p.j - q.i + q.j});
      else out.push_back({p.i + q.i - p.j, a.twist(q.i - p.j, p.r) * q.r, q.j});
    }
  return out;
}

/// x^-i r x^j -> (i, r) x^(j-i), extended additively.
inline TwistedPoly jordan_laurent_iso(const TwistHandle& target, const std::vector<ConjugateTerm>& f) {
  const auto& a = as_jordan(target->ring());
  TwistedPoly out(target, {});
  for (const auto& t : f) out = out + TwistedPoly::monomial(target, a.make(t.i, t.r), t.j - t.i);
  return out;
}

struct Pro4Step {
  bool hypothesis = false;  // Ann(L_i) within Ann(L_{i+1}) on the sampled part of A
  bool conclusion = false;  // Ann(K_i) within Ann(K_{i+1}) in R
  std::optional<Element> witness;
};

struct Pro4Report {
  bool pass = true;
  std::vector<Pro4Step> steps;
  std::vector<std::vector<Element>> k_sets;
};

/// K = {k : x^-t k x^t in L for some t}: all representatives of L's elements.
inline std::vector<Element> presentations(const JordanRing& a, const std::vector<Element>& l) {
  std::set<Element> out;
  for (const auto& e : l) {
    Element r = JordanRing::rep_of(e);
    while (out.insert(r).second) r = a.alpha()->apply(r);
  }
  return {out.begin(), out.end()};
}

/// Left annihilators of each L_i over canonical elements of level <= max_level
/// and of each K_i over R; the lemma needs hypothesis => conclusion stepwise.
inline Pro4Report lemma_pro4_check(const std::shared_ptr<const JordanRing>& a,
                                   const std::vector<std::vector<Element>>& chains, std::int64_t max_level = 3) {
  auto rigid = is_rigid(a->base(), a->alpha());
  if (rigid.verdict != Verdict::holds)
    throw Error(ErrorCode::NotRigid, a->base()->name() + " is not " + a->alpha()->describe() + "-rigid" +
                                         (rigid.witness ? ", witness " + rigid.witness->str() : ""));
  auto sample = a->canonical_elements(max_level);
  auto ann = [](const std::vector<Element>& universe, const std::vector<Element>& xs) {
    std::set<Element> out;
    for (const auto& s : universe) {
      bool kills = true;
      for (const auto& x : xs)
        if (!(s * x).is_zero()) {
          kills = false;
          break;
        }
      if (kills) out.insert(s);
    }
    return out;
  };
  auto subset_witness = [](const std::set<Element>& x, const std::set<Element>& y) -> std::optional<Element> {
    for (const auto& e : x)
      if (!y.count(e)) return e;
    return std::nullopt;
  };
  Pro4Report out;
  auto base_universe = a->base()->universe();
  for (const auto& l : chains) out.k_sets.push_back(presentations(*a, l));
  for (std::size_t i = 0; i + 1 < chains.size(); ++i) {
    Pro4Step step;
    step.hypothesis = !subset_witness(ann(sample, chains[i]), ann(sample, chains[i + 1]));
    step.witness = subset_witness(ann(base_universe, out.k_sets[i]), ann(base_universe, out.k_sets[i + 1]));
    step.conclusion = !step.witness;
    if (step.hypothesis && !step.conclusion) out.pass = false;
    out.steps.push_back(step);
  }
  return out;
}

}  // namespace sgps
