#pragma once

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "sgps/ring.hpp"

namespace sgps {

/// lhs -> rhs; an empty rhs rewrites to zero.
struct RewriteRule {
  Word lhs;
  Poly rhs;
};

/// Termination measure of a monomial: (total degree, sum of variable
/// weights), compared lexicographically. Every rule must strictly decrease it.
struct MonomialWeight {
  std::size_t degree = 0;
  std::int64_t weight = 0;
  auto operator<=>(const MonomialWeight&) const = default;
};

/// Bounds and layout of the materialized part of an infinite presentation.
struct TruncationPolicy {
  int num_vars = 1;
  std::optional<int> degree_cap;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = w.size();
    for (auto x : w) h = h * 1000003u ^ x;
    return h;
  }
};

class RewriteSystem {
 public:
  RewriteSystem() = default;
  RewriteSystem(std::vector<RewriteRule> rules, bool commutative, std::vector<std::int64_t> var_weights = {})
      : rules_(std::move(rules)), commutative_(commutative), weights_(std::move(var_weights)) {
    if (commutative_) {
      for (auto& r : rules_) {
        std::sort(r.lhs.begin(), r.lhs.end());
        Poly sorted;
        for (auto& [w, c] : r.rhs) {
          Word s = w;
          std::sort(s.begin(), s.end());
          sorted[s] += c;
        }
        std::erase_if(sorted, [](const auto& kv) { return kv.second == 0; });
        r.rhs = std::move(sorted);
      }
    }
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (rules_[i].lhs.empty()) throw Error(ErrorCode::InvalidArgument, "rewrite rule with empty left side");
      by_first_[rules_[i].lhs.front()].push_back(i);
    }
  }

  const std::vector<RewriteRule>& rules() const noexcept { return rules_; }
  bool commutative() const noexcept { return commutative_; }

  /// Weight of variable i: the explicit weight if given, else i itself.
  std::int64_t var_weight(std::uint16_t v) const {
    if (v - 1u < weights_.size()) return weights_[v - 1u];
    return v;
  }

  MonomialWeight measure(const Word& w) const {
    MonomialWeight m{w.size(), 0};
    for (auto v : w) m.weight += var_weight(v);
    return m;
  }

  /// Throws NonTerminating naming the first rule that does not decrease the measure.
  void check_termination() const {
    for (const auto& r : rules_) {
      auto top = measure(r.lhs);
      for (const auto& [w, c] : r.rhs)
        if (!(measure(w) < top))
          throw Error(ErrorCode::NonTerminating, "rule does not decrease the monomial weight");
    }
  }

  bool homogeneous() const {
    for (const auto& r : rules_)
      for (const auto& [w, c] : r.rhs)
        if (w.size() != r.lhs.size()) return false;
    return true;
  }

  bool monomial() const {
    return std::all_of(rules_.begin(), rules_.end(), [](const auto& r) { return r.rhs.empty(); });
  }

  /// First (rule, position) whose left side occurs in w. For commutative
  /// systems the position is unused.
  std::optional<std::pair<std::size_t, std::size_t>> find_match(const Word& w, bool from_right = false) const {
    if (commutative_) {
      std::optional<std::pair<std::size_t, std::size_t>> found;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && w[i] == w[i - 1]) continue;
        auto it = by_first_.find(w[i]);
        if (it == by_first_.end()) continue;
        for (auto ri : it->second) {
          if (std::includes(w.begin(), w.end(), rules_[ri].lhs.begin(), rules_[ri].lhs.end())) {
            found = std::make_pair(ri, std::size_t{0});
            if (!from_right) return found;
          }
        }
      }
      return found;
    }
    auto scan = [&](std::size_t pos) -> std::optional<std::pair<std::size_t, std::size_t>> {
      auto it = by_first_.find(w[pos]);
      if (it == by_first_.end()) return std::nullopt;
      for (auto ri : it->second) {
        const auto& l = rules_[ri].lhs;
        if (pos + l.size() <= w.size() && std::equal(l.begin(), l.end(), w.begin() + static_cast<std::ptrdiff_t>(pos)))
          return std::make_pair(ri, pos);
      }
      return std::nullopt;
    };
    if (from_right) {
      for (std::size_t pos = w.size(); pos-- > 0;)
        if (auto m = scan(pos)) return m;
    } else {
      for (std::size_t pos = 0; pos < w.size(); ++pos)
        if (auto m = scan(pos)) return m;
    }
    return std::nullopt;
  }

  /// Splits w around a match: (prefix, suffix) such that w = prefix*lhs*suffix.
  /// For commutative systems prefix is empty and suffix is w minus lhs.
  std::pair<Word, Word> context_of(const Word& w, std::size_t rule, std::size_t pos) const {
    const auto& l = rules_[rule].lhs;
    if (commutative_) {
      Word rest;
      std::set_difference(w.begin(), w.end(), l.begin(), l.end(), std::back_inserter(rest));
      return {Word{}, rest};
    }
    return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos)),
            Word(w.begin() + static_cast<std::ptrdiff_t>(pos + l.size()), w.end())};
  }

  Word concat(const Word& a, const Word& b) const {
    Word out;
    out.reserve(a.size() + b.size());
    if (commutative_) {
      std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    } else {
      out.insert(out.end(), a.begin(), a.end());
      out.insert(out.end(), b.begin(), b.end());
    }
    return out;
  }

 private:
  std::vector<RewriteRule> rules_;
  bool commutative_ = true;
  std::vector<std::int64_t> weights_;
  std::map<std::uint16_t, std::vector<std::size_t>> by_first_;
};

/// field<x_1..x_N> / (rules [+ monomials of degree > cap]) with elements in
/// rewriting normal form. The rules must terminate and be confluent on all
/// critical overlaps; both are checked at construction.
class QuotientAlgebra final : public Ring {
 public:
  QuotientAlgebra(CoefficientField field, std::string var_prefix, TruncationPolicy policy, RewriteSystem rules)
      : field_(field), prefix_(std::move(var_prefix)), policy_(policy), rules_(std::move(rules)) {
    if (policy_.num_vars < 1 || policy_.num_vars > 4096)
      throw Error(ErrorCode::InvalidArgument, "number of variables must be in 1..4096");
    for (const auto& r : rules_.rules()) {
      for (auto v : r.lhs)
        if (v < 1 || v > policy_.num_vars) throw Error(ErrorCode::InvalidArgument, "rule uses unknown variable");
    }
    if (policy_.degree_cap && !rules_.homogeneous())
      throw Error(ErrorCode::InvalidArgument, "a degree cap requires degree-homogeneous relations");
    rules_.check_termination();
    check_critical_pairs();
    compute_basis_info();
  }

  const CoefficientField& field() const noexcept { return field_; }
  const RewriteSystem& rewrite_system() const noexcept { return rules_; }
  const TruncationPolicy& policy() const noexcept { return policy_; }
  int num_vars() const noexcept { return policy_.num_vars; }
  bool commutative() const noexcept { return rules_.commutative(); }
  const std::string& var_prefix() const noexcept { return prefix_; }
  std::string var_name(std::uint16_t v) const { return prefix_ + std::to_string(v); }
  bool finite_basis() const noexcept { return finite_basis_; }

  Element variable(int i) const {
    if (i < 1 || i > policy_.num_vars)
      throw Error(ErrorCode::InvalidArgument, "variable index " + std::to_string(i) + " out of range");
    return monomial(Word{static_cast<std::uint16_t>(i)});
  }

  Element monomial(const Word& w, const Rational& c = 1) const {
    Poly p;
    p[w] = c;
    return wrap(normalize(std::move(p)));
  }

  Element constant(const Rational& c) const { return monomial(Word{}, c); }

  /// Brings an arbitrary polynomial (any words, any coefficients) to normal form.
  Poly normalize(const Poly& raw) const {
    Poly out;
    for (const auto& [w, c] : raw) {
      Rational cc = field_.normalize(c);
      if (cc == 0) continue;
      if (exceeds_cap(w)) continue;
      Word sorted = w;
      if (rules_.commutative()) std::sort(sorted.begin(), sorted.end());
      for (const auto& [nw, nc] : reduce_word(sorted)) accumulate(out, nw, field_.mul(cc, nc));
    }
    return out;
  }

  /// Normal form of a single word (cached).
  Poly reduce_word(const Word& w) const {
    {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      auto it = cache_.find(w);
      if (it != cache_.end()) return it->second;
    }
    Poly result = reduce_word_uncached(w, false);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (cache_.size() < 2'000'000) cache_.emplace(w, result);
    return result;
  }

  bool is_normal_word(const Word& w) const { return !exceeds_cap(w) && !rules_.find_match(w).has_value(); }

  /// All normal words of degree <= max_degree, in degree-lex order.
  std::vector<Word> normal_words(int max_degree) const {
    std::vector<Word> out{Word{}};
    std::vector<Word> layer{Word{}};
    for (int d = 1; d <= max_degree; ++d) {
      std::vector<Word> next;
      for (const auto& w : layer) {
        std::uint16_t start = rules_.commutative() && !w.empty() ? w.back() : 1;
        for (std::uint16_t v = start; v <= policy_.num_vars; ++v) {
          Word e = w;
          e.push_back(v);
          if (is_normal_word(e)) next.push_back(std::move(e));
        }
      }
      if (next.empty()) break;
      std::sort(next.begin(), next.end(), DegLex());
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  std::size_t degree(const Element& a) const {
    const auto& p = std::get<Poly>(a.payload());
    return p.empty() ? 0 : p.rbegin()->first.size();
  }

  /// Reduces every word of degree <= max_degree with two different rewriting
  /// strategies and reports the first word whose normal forms disagree.
  std::optional<Word> strategy_disagreement(int max_degree) const {
    std::vector<Word> layer{Word{}};
    for (int d = 1; d <= max_degree; ++d) {
      std::vector<Word> next;
      for (const auto& w : layer) {
        std::uint16_t start = rules_.commutative() && !w.empty() ? w.back() : 1;
        for (std::uint16_t v = start; v <= policy_.num_vars; ++v) {
          Word e = w;
          e.push_back(v);
          if (reduce_word_uncached(e, false) != reduce_word_uncached(e, true)) return e;
          next.push_back(std::move(e));
        }
      }
      layer = std::move(next);
    }
    return std::nullopt;
  }

  Element from_poly(const Poly& raw) const { return wrap(normalize(raw)); }
  static const Poly& poly_of(const Element& a) { return std::get<Poly>(a.payload()); }

  // Ring interface.
  RingKind kind() const override { return RingKind::quotient_algebra; }
  std::string name() const override {
    std::string s = "QuotAlg(" + field_.name() + "; " + prefix_ + "1.." + prefix_ +
                    std::to_string(policy_.num_vars) + "; " + std::to_string(rules_.rules().size()) + " rules; " +
                    (rules_.commutative() ? "comm" : "noncomm");
    if (policy_.degree_cap) s += "; degcap=" + std::to_string(*policy_.degree_cap);
    return s + ")";
  }
  bool enumerable() const override { return universe_size_ > 0; }
  BigInt characteristic() const override { return field_.characteristic(); }

  Payload zero_payload() const override { return Poly{}; }
  Payload one_payload() const override {
    Poly p;
    p[Word{}] = 1;
    return p;
  }
  Payload add(const Payload& a, const Payload& b) const override {
    Poly out = std::get<Poly>(a);
    for (const auto& [w, c] : std::get<Poly>(b)) accumulate(out, w, c);
    return out;
  }
  Payload neg(const Payload& a) const override {
    Poly out = std::get<Poly>(a);
    for (auto& [w, c] : out) c = field_.neg(c);
    return out;
  }
  Payload mul(const Payload& a, const Payload& b) const override {
    Poly out;
    for (const auto& [wa, ca] : std::get<Poly>(a)) {
      for (const auto& [wb, cb] : std::get<Poly>(b)) {
        if (policy_.degree_cap && wa.size() + wb.size() > static_cast<std::size_t>(*policy_.degree_cap)) continue;
        Rational c = field_.mul(ca, cb);
        for (const auto& [w, k] : reduce_word(rules_.concat(wa, wb))) accumulate(out, w, field_.mul(c, k));
      }
    }
    return out;
  }
  Payload from_integer(const BigInt& n) const override {
    Poly p;
    Rational c = field_.normalize(Rational(n));
    if (c != 0) p[Word{}] = c;
    return p;
  }

  Payload random_payload(Rng& rng) const override {
    std::uniform_int_distribution<int> terms(1, 3);
    int max_len = policy_.degree_cap ? std::min(3, *policy_.degree_cap) : 3;
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> var(1, policy_.num_vars);
    Poly raw;
    int t = terms(rng);
    for (int i = 0; i < t; ++i) {
      Word w;
      int l = len(rng);
      for (int j = 0; j < l; ++j) w.push_back(static_cast<std::uint16_t>(var(rng)));
      raw[w] += field_.random_nonzero(rng);
    }
    return normalize(raw);
  }

  std::string format(const Payload& a) const override {
    const auto& p = std::get<Poly>(a);
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : p) {
      Rational coef = c;
      bool negative = field_.characteristic() == 0 && coef < 0;
      if (negative) coef = -coef;
      if (first) {
        if (negative) os << "-";
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      std::string mono = format_word(w);
      if (mono.empty()) {
        os << to_string(coef);
      } else {
        if (coef != 1) os << to_string(coef) << "*";
        os << mono;
      }
    }
    return os.str();
  }
  nlohmann::json to_json(const Payload& a) const override { return format(a); }

  std::string format_word(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      if (!out.empty()) out += "*";
      out += var_name(w[i]);
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  std::vector<Payload> universe_payloads() const override {
    if (!enumerable()) return Ring::universe_payloads();
    auto basis = normal_words(basis_degree_bound_);
    std::vector<Payload> out;
    std::int64_t p = field_.characteristic();
    std::vector<std::int64_t> digits(basis.size(), 0);
    for (std::size_t count = 0; count < universe_size_; ++count) {
      Poly poly;
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (digits[i] != 0) poly[basis[i]] = Rational(digits[i]);
      out.emplace_back(std::move(poly));
      for (std::size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < p) break;
        digits[i] = 0;
      }
    }
    return out;
  }

  /// Graded presentations: units are exactly c + n with c != 0 and n
  /// nilpotent; a bounded nilpotency search decides most cases.
  StructuralUnit structural_unit(const Payload& a) const override {
    if (enumerable() || !rules_.homogeneous()) return {};
    const auto& p = std::get<Poly>(a);
    auto it = p.find(Word{});
    if (it == p.end()) return {Decision::no, std::nullopt};
    Rational c0_inv = field_.inv(it->second);
    Poly scaled;
    for (const auto& [w, c] : p)
      if (!w.empty()) scaled[w] = field_.neg(field_.mul(c, c0_inv));
    // inverse = c0^-1 * sum_j m^j with m = -(a/c0 - 1)
    Payload m = Payload(scaled);
    Payload term = one_payload();
    Payload sum = one_payload();
    for (int j = 1; j <= 64; ++j) {
      term = mul(term, m);
      if (std::get<Poly>(term).empty()) {
        Poly inv = std::get<Poly>(sum);
        for (auto& [w, c] : inv) c = field_.mul(c, c0_inv);
        return {Decision::yes, Payload(inv)};
      }
      sum = add(sum, term);
    }
    return {};
  }

  std::size_t universe_size() const noexcept { return universe_size_; }

 private:
  bool exceeds_cap(const Word& w) const {
    return policy_.degree_cap && w.size() > static_cast<std::size_t>(*policy_.degree_cap);
  }

  void accumulate(Poly& out, const Word& w, const Rational& c) const {
    if (c == 0) return;
    auto [it, inserted] = out.try_emplace(w, c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (it->second == 0) out.erase(it);
    }
  }

  Poly reduce_word_uncached(const Word& start, bool from_right) const {
    Poly out;
    std::vector<std::pair<Word, Rational>> stack{{start, Rational(1)}};
    while (!stack.empty()) {
      auto [w, c] = std::move(stack.back());
      stack.pop_back();
      if (exceeds_cap(w)) continue;
      auto m = rules_.find_match(w, from_right);
      if (!m) {
        accumulate(out, w, c);
        continue;
      }
      auto [pre, post] = rules_.context_of(w, m->first, m->second);
      for (const auto& [rw, rc] : rules_.rules()[m->first].rhs)
        stack.emplace_back(rules_.concat(rules_.concat(pre, rw), post), field_.mul(c, rc));
    }
    return out;
  }

  Poly times(const Word& left, const Poly& mid, const Word& right) const {
    Poly raw;
    for (const auto& [w, c] : mid) raw[rules_.concat(rules_.concat(left, w), right)] += c;
    return normalize(raw);
  }

  // Every overlap of two left sides must reduce to one normal form.
  void check_critical_pairs() const {
    const auto& rs = rules_.rules();
    auto fail = [&](const Word& w) {
      throw Error(ErrorCode::NonConfluent, "overlap " + format_word(w) + " has two normal forms");
    };
    for (std::size_t i = 0; i < rs.size(); ++i) {
      for (std::size_t j = 0; j < rs.size(); ++j) {
        const Word& l1 = rs[i].lhs;
        const Word& l2 = rs[j].lhs;
        if (rules_.commutative()) {
          if (j <= i) continue;
          Word lcm;
          std::set_union(l1.begin(), l1.end(), l2.begin(), l2.end(), std::back_inserter(lcm));
          if (lcm.size() == l1.size() + l2.size()) continue;  // coprime left sides
          Word q1, q2;
          std::set_difference(lcm.begin(), lcm.end(), l1.begin(), l1.end(), std::back_inserter(q1));
          std::set_difference(lcm.begin(), lcm.end(), l2.begin(), l2.end(), std::back_inserter(q2));
          if (times(Word{}, rs[i].rhs, q1) != times(Word{}, rs[j].rhs, q2)) fail(lcm);
          continue;
        }
        // suffix of l1 == prefix of l2
        for (std::size_t k = 1; k < std::min(l1.size(), l2.size()) + (i == j ? 0 : 1); ++k) {
          if (k >= l1.size() && k >= l2.size()) break;
          if (!std::equal(l1.end() - static_cast<std::ptrdiff_t>(k), l1.end(), l2.begin())) continue;
          Word tail(l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end());
          Word head(l1.begin(), l1.end() - static_cast<std::ptrdiff_t>(k));
          Word whole = rules_.concat(l1, tail);
          if (times(Word{}, rs[i].rhs, tail) != times(head, rs[j].rhs, Word{})) fail(whole);
        }
        // l2 inside l1
        if (i != j && l2.size() <= l1.size()) {
          for (std::size_t pos = 0; pos + l2.size() <= l1.size(); ++pos) {
            if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
            Word head(l1.begin(), l1.begin() + static_cast<std::ptrdiff_t>(pos));
            Word tail(l1.begin() + static_cast<std::ptrdiff_t>(pos + l2.size()), l1.end());
            Poly a = normalize(rs[i].rhs);
            if (a != times(head, rs[j].rhs, tail)) fail(l1);
          }
        }
      }
    }
  }

  void compute_basis_info() {
    // The normal-word basis is finite iff breadth-first extension dies out.
    int bound = policy_.degree_cap ? *policy_.degree_cap : 64;
    std::size_t count = 1;
    std::vector<Word> layer{Word{}};
    finite_basis_ = false;
    for (int d = 1; d <= bound + 1; ++d) {
      std::vector<Word> next;
      for (const auto& w : layer) {
        std::uint16_t start = rules_.commutative() && !w.empty() ? w.back() : 1;
        for (std::uint16_t v = start; v <= policy_.num_vars; ++v) {
          Word e = w;
          e.push_back(v);
          if (is_normal_word(e)) next.push_back(std::move(e));
        }
        if (next.size() > 4096) break;
      }
      if (next.empty()) {
        finite_basis_ = true;
        basis_degree_bound_ = d - 1;
        break;
      }
      if (next.size() > 4096) break;
      count += next.size();
      layer = std::move(next);
    }
    universe_size_ = 0;
    if (finite_basis_ && field_.finite()) {
      double log_size = static_cast<double>(count) * std::log2(static_cast<double>(field_.characteristic()));
      if (log_size <= std::log2(static_cast<double>(kEnumerationLimit))) {
        std::size_t size = 1;
        for (std::size_t i = 0; i < count; ++i) size *= static_cast<std::size_t>(field_.characteristic());
        universe_size_ = size;
      }
    }
  }

  CoefficientField field_;
  std::string prefix_;
  TruncationPolicy policy_;
  RewriteSystem rules_;
  bool finite_basis_ = false;
  int basis_degree_bound_ = 0;
  std::size_t universe_size_ = 0;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<Word, Poly, WordHash> cache_;
};

inline std::shared_ptr<const QuotientAlgebra> make_quotient_algebra(CoefficientField field, std::string prefix,
                                                                    TruncationPolicy policy, RewriteSystem rules) {
  return std::make_shared<QuotientAlgebra>(field, std::move(prefix), policy, std::move(rules));
}

inline const QuotientAlgebra& as_algebra(const RingHandle& r) {
  auto* q = dynamic_cast<const QuotientAlgebra*>(r.get());
  if (q == nullptr) throw Error(ErrorCode::InvalidArgument, r->name() + " is not a quotient algebra");
  return *q;
}

/// Substitution endomorphism x_i -> images[i], followed by normalization.
class VarMapEndo final : public Endomorphism {
 public:
  VarMapEndo(RingHandle domain, std::vector<Element> images, std::vector<std::string> escaped, std::string label)
      : Endomorphism(std::move(domain)), images_(std::move(images)), escaped_(std::move(escaped)),
        label_(std::move(label)) {}

  Element apply(const Element& a) const override {
    const auto& alg = as_algebra(domain());
    Element out = alg.zero();
    for (const auto& [w, c] : QuotientAlgebra::poly_of(a)) out += alg.constant(c) * image_of_word(w);
    return out;
  }

  Element image_of_word(const Word& w) const {
    const auto& alg = as_algebra(domain());
    Element out = alg.one();
    for (auto v : w) out *= images_.at(v - 1u);
    return out;
  }

  std::string describe() const override { return label_; }
  bool is_identity() const override {
    const auto& alg = as_algebra(domain());
    for (int i = 1; i <= alg.num_vars(); ++i)
      if (images_[static_cast<std::size_t>(i - 1)] != alg.variable(i)) return false;
    return true;
  }
  std::vector<std::string> escaped() const override { return escaped_; }
  const std::vector<Element>& images() const noexcept { return images_; }

 private:
  std::vector<Element> images_;
  std::vector<std::string> escaped_;
  std::string label_;
};

/// Builds the substitution endomorphism; throws NotWellDefined when the image
/// of some relation does not vanish. `escaped` lists variables whose intended
/// image lay beyond the truncation and was replaced by zero.
inline EndoHandle make_endo_varmap(const RingHandle& r, std::vector<Element> images,
                                   std::vector<std::string> escaped = {}, std::string label = "varmap") {
  const auto& alg = as_algebra(r);
  if (images.size() != static_cast<std::size_t>(alg.num_vars()))
    throw Error(ErrorCode::InvalidArgument, "varmap needs an image for every materialized variable");
  for (const auto& im : images)
    if (im.ring() != r) throw Error(ErrorCode::MixedRings, "varmap image outside the algebra");
  auto endo = std::make_shared<VarMapEndo>(r, std::move(images), std::move(escaped), std::move(label));
  for (const auto& rule : alg.rewrite_system().rules()) {
    Element lhs = endo->image_of_word(rule.lhs);
    Element rhs = endo->apply(alg.from_poly(rule.rhs));
    if (lhs != rhs)
      throw Error(ErrorCode::NotWellDefined, "image of relation " + alg.format_word(rule.lhs) + " = ... is " +
                                                 (lhs - rhs).str() + ", not 0");
  }
  return endo;
}

}  // namespace sgps
