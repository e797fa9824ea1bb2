#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <variant>

#include "sgps/dsl.hpp"
#include "sgps/scenarios.hpp"

namespace sgps::dsl {

using Value = std::variant<Element, Series, TwistedPoly>;

inline nlohmann::json value_json(const Value& v) {
  return std::visit([](const auto& x) { return x.to_json(); }, v);
}
inline std::string value_text(const Value& v) {
  return std::visit([](const auto& x) { return x.str(); }, v);
}

struct RunOptions {
  std::uint64_t seed = 1;
  bool timing = false;  // adds elapsed_ms, which breaks byte-identical output
};

/// Serializes with sorted keys and the schema version.
inline std::string emit_report(nlohmann::json report, bool pretty = true) {
  if (!report.is_object()) report = {{"result", report}};
  report["v"] = 1;
  return pretty ? report.dump(2) : report.dump();
}

class Session {
 public:
  explicit Session(RunOptions opts = {}) : opts_(opts) {}

  /// Executes one statement. Declarations return nullopt on success;
  /// commands return their report entry. Domain errors become entries.
  std::optional<nlohmann::json> execute(const Statement& st) {
    nlohmann::json entry{{"line", st.pos.line}, {"statement", print(st)}};
    auto start = std::chrono::steady_clock::now();
    try {
      if (const auto* d = std::get_if<Decl>(&st.node)) {
        declare(*d);
        return std::nullopt;
      }
      entry["result"] = run(std::get<Command>(st.node));
      entry["ok"] = true;
    } catch (const ParseError& e) {
      entry["ok"] = false;
      entry["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    } catch (const Error& e) {
      entry["ok"] = false;
      entry["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()},
                        {"column", st.pos.column}};
    }
    if (opts_.timing)
      entry["elapsed_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return entry;
  }

  /// Runs every statement; the result holds one entry per command and per
  /// failed declaration.
  nlohmann::json run_all(const SessionAST& ast, std::size_t* errors = nullptr) {
    nlohmann::json reports = nlohmann::json::array();
    std::size_t failed = 0;
    for (const auto& st : ast.statements)
      if (auto e = execute(st)) {
        if (!(*e)["ok"].get<bool>()) ++failed;
        reports.push_back(std::move(*e));
      }
    if (errors) *errors = failed;
    return {{"reports", reports}, {"errors", failed}, {"seed", opts_.seed}};
  }

 private:
  struct Space {
    enum class Kind { ring, series, poly } kind = Kind::ring;
    RingHandle ring;
    ContextHandle series;
    TwistHandle poly;
  };

  RunOptions opts_;
  std::map<std::string, RingHandle> rings_;
  std::map<std::string, EndoHandle> endos_;
  std::map<std::string, MonoidHandle> monoids_;
  std::map<std::string, ContextHandle> series_;
  std::map<std::string, TwistHandle> polys_;
  std::map<std::string, std::pair<std::string, Value>> lets_;
  std::optional<Rational> trunc_;

  using Bindings = std::map<std::string, Rational>;

  // -------------------------------------------------- lookups

  template <class M>
  static const typename M::mapped_type& find(const M& m, const std::string& name, const char* what) {
    auto it = m.find(name);
    if (it == m.end()) throw Error(ErrorCode::UnknownIdentifier, std::string(what) + " '" + name + "' is not available");
    return it->second;
  }

  Space space_of(const std::string& name) const {
    if (auto it = lets_.find(name); it != lets_.end()) return space_of(it->second.first);
    Space s;
    if (auto it = rings_.find(name); it != rings_.end()) {
      s.ring = it->second;
      return s;
    }
    if (auto it = series_.find(name); it != series_.end()) {
      s.kind = Space::Kind::series;
      s.series = it->second;
      s.ring = it->second->ring();
      return s;
    }
    if (auto it = polys_.find(name); it != polys_.end()) {
      s.kind = Space::Kind::poly;
      s.poly = it->second;
      s.ring = it->second->ring();
      return s;
    }
    throw Error(ErrorCode::UnknownIdentifier, "'" + name + "' is not available");
  }

  // -------------------------------------------------- declarations

  void declare(const Decl& d) {
    if (d.kind == "ring") {
      rings_[d.name] = build_ring(d.ring);
    } else if (d.kind == "endo") {
      endos_[d.name] = build_endo(find(rings_, d.on, "ring"), d.endo);
    } else if (d.kind == "monoid") {
      monoids_[d.name] = make_monoid(*parse_monoid_kind(d.monoid));
    } else if (d.kind == "context") {
      const auto& c = d.context;
      const auto& r = find(rings_, c.ring, "ring");
      EndoHandle e = c.endo == "id" ? identity_endo(r) : find(endos_, c.endo, "endomorphism");
      if (e->domain() != r) throw Error(ErrorCode::MixedRings, c.endo + " is not an endomorphism of " + c.ring);
      if (c.kind == "series") {
        series_[d.name] = make_context(r, find(monoids_, c.monoid, "monoid"), c.endo == "id" ? nullptr : e);
      } else {
        polys_[d.name] = c.kind == "skew" ? make_skew_context(r, e) : make_laurent_context(r, e);
      }
    } else {
      lets_[d.name] = {d.on, eval(*d.value, space_of(d.on), {})};
    }
  }

  RingHandle build_ring(const RingSpec& s) {
    if (s.kind == "ref") return find(rings_, s.ref, "ring");
    if (s.kind == "Z") return make_integers();
    if (s.kind == "Zmod") return make_zmod(s.ints.at(0));
    if (s.kind == "GF") return make_gf(s.ints.at(0), s.ints.size() > 1 ? static_cast<int>(s.ints[1]) : 1);
    if (s.kind == "Jordan") return make_jordan(find(rings_, s.ref, "ring"), find(endos_, s.endo, "endomorphism"));
    CoefficientField field = s.field == "Q" ? CoefficientField::rationals()
                                            : CoefficientField(std::stoll(s.field.substr(3, s.field.size() - 4)));
    if (s.nvars < 1 || s.nvars > 4096) throw Error(ErrorCode::ParameterRange, "number of variables must be in 1..4096");
    int n = static_cast<int>(s.nvars);
    std::vector<RewriteRule> rules;
    for (const auto& t : s.rels)
      instantiate(t, n, [&](const Bindings& b) {
        Poly lhs = raw_poly(t.lhs, s.prefix, b);
        if (lhs.size() != 1 || lhs.begin()->second != 1 || lhs.begin()->first.empty())
          throw Error(ErrorCode::InvalidArgument, "relation left side must be a monomial: " + print(t.lhs));
        Poly rhs;
        for (const auto& [w, c] : raw_poly(*t.rhs, s.prefix, b)) {
          check_range(w, n, print(*t.rhs));
          Rational cn = field.normalize(c);
          if (cn != 0) rhs[w] = cn;
        }
        Word lw = lhs.begin()->first;
        check_range(lw, n, print(t.lhs));
        rules.push_back({lw, rhs});
      });
    std::optional<int> cap;
    if (s.degcap) cap = static_cast<int>(*s.degcap);
    return make_quotient_algebra(field, s.prefix, {n, cap}, RewriteSystem(std::move(rules), s.commutative));
  }

  static void check_range(const Word& w, int n, const std::string& where) {
    for (auto v : w)
      if (v > n) throw Error(ErrorCode::EscapesTruncation, "variable index " + std::to_string(v) + " beyond " +
                                                            std::to_string(n) + " in " + where);
  }

  EndoHandle build_endo(const RingHandle& r, const EndoSpec& s) {
    if (s.kind == "id") return identity_endo(r);
    if (s.kind == "frobenius") return make_frobenius(r, s.power);
    const auto& alg = as_algebra(r);
    int n = alg.num_vars();
    std::vector<std::optional<Element>> images(static_cast<std::size_t>(n));
    std::vector<std::string> escaped;
    for (const auto& t : s.rules)
      instantiate(t, n, [&](const Bindings& b) {
        Poly from = raw_poly(t.lhs, alg.var_prefix(), b);
        if (from.size() != 1 || from.begin()->first.size() != 1 || from.begin()->second != 1)
          throw Error(ErrorCode::InvalidArgument, "varmap rules map single variables: " + print(t.lhs));
        auto v = from.begin()->first.front();
        if (v > n || images[v - 1u]) return;  // first matching rule wins
        Poly to;
        for (const auto& [w, c] : raw_poly(*t.rhs, alg.var_prefix(), b)) {
          bool beyond = std::any_of(w.begin(), w.end(), [&](auto x) { return x > n; });
          if (beyond) {
            for (auto x : w)
              if (x > n) escaped.push_back(alg.var_name(x));
            continue;
          }
          to[w] += c;
        }
        images[v - 1u] = alg.from_poly(to);
      });
    std::vector<Element> full;
    for (int i = 1; i <= n; ++i) full.push_back(images[static_cast<std::size_t>(i - 1)].value_or(alg.variable(i)));
    std::sort(escaped.begin(), escaped.end());
    escaped.erase(std::unique(escaped.begin(), escaped.end()), escaped.end());
    return make_endo_varmap(r, std::move(full), std::move(escaped), "varmap");
  }

  // -------------------------------------------------- templates

  static void collect_index_vars(const Expr& e, std::set<std::string>& out, bool inside_index) {
    if (e.kind == Expr::Kind::ident && inside_index) out.insert(e.text);
    for (const auto& a : e.args) collect_index_vars(a, out, inside_index || e.kind == Expr::Kind::index);
  }

  /// Calls body for every assignment of the template's index variables in
  /// 1..n satisfying its conditions.
  static void instantiate(const Template& t, int n, const std::function<void(const Bindings&)>& body) {
    std::set<std::string> names;
    collect_index_vars(t.lhs, names, false);
    if (t.rhs) collect_index_vars(*t.rhs, names, false);
    for (const auto& c : t.conds) {
      collect_index_vars(c.lhs, names, true);
      if (c.rhs) collect_index_vars(*c.rhs, names, true);
    }
    std::vector<std::string> vars(names.begin(), names.end());
    if (vars.size() > 3) throw Error(ErrorCode::InvalidArgument, "at most three index variables per template");
    Bindings b;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == vars.size()) {
        for (const auto& c : t.conds)
          if (!holds(c, b)) return;
        body(b);
        return;
      }
      for (int i = 1; i <= n; ++i) {
        b[vars[k]] = i;
        rec(k + 1);
      }
    };
    rec(0);
  }

  static bool holds(const Cond& c, const Bindings& b) {
    Rational l = eval_rational(c.lhs, b);
    if (c.op == "even" || c.op == "odd") {
      if (!is_integer(l)) return false;
      bool even = numerator(l) % 2 == 0;
      return c.op == "even" ? even : !even;
    }
    Rational r = eval_rational(*c.rhs, b);
    if (c.op == "==") return l == r;
    if (c.op == "!=") return l != r;
    if (c.op == "<") return l < r;
    if (c.op == "<=") return l <= r;
    if (c.op == ">") return l > r;
    return l >= r;
  }

  static Rational eval_rational(const Expr& e, const Bindings& b) {
    switch (e.kind) {
      case Expr::Kind::number: return Rational(BigInt(e.text));
      case Expr::Kind::ident: {
        auto it = b.find(e.text);
        if (it == b.end()) throw Error(ErrorCode::UnknownIdentifier, "'" + e.text + "' is not an index or parameter");
        return it->second;
      }
      case Expr::Kind::neg: return -eval_rational(e.args[0], b);
      case Expr::Kind::binary: {
        Rational l = eval_rational(e.args[0], b);
        Rational r = eval_rational(e.args[1], b);
        if (e.text == "+") return l + r;
        if (e.text == "-") return l - r;
        if (e.text == "*") return l * r;
        if (e.text == "/") {
          if (r == 0) throw Error(ErrorCode::InvalidArgument, "division by zero in " + print(e));
          return l / r;
        }
        std::int64_t k = integer_exponent(r, e);
        Rational base = l;
        if (k < 0) {
          if (base == 0) throw Error(ErrorCode::InvalidArgument, "0 to a negative power");
          base = 1 / base;
          k = -k;
        }
        Rational out = 1;
        for (std::int64_t i = 0; i < k; ++i) out *= base;
        return out;
      }
      default: throw Error(ErrorCode::TypeMismatch, "not a rational expression: " + print(e));
    }
  }

  static std::int64_t integer_exponent(const Rational& r, const Expr& where) {
    if (!is_integer(r) || abs(r) > 100000)
      throw Error(ErrorCode::InvalidArgument, "exponent must be a small integer in " + print(where));
    return static_cast<std::int64_t>(numerator(r));
  }

  /// Expression over variables prefix<i> / prefix[i] as a raw noncommutative
  /// polynomial with rational coefficients (no reduction).
  static Poly raw_poly(const Expr& e, const std::string& prefix, const Bindings& b) {
    auto var = [](std::int64_t i) {
      if (i < 1 || i > 65535) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
      Poly p;
      p[Word{static_cast<std::uint16_t>(i)}] = 1;
      return p;
    };
    auto constant = [](const Rational& q) {
      Poly p;
      if (q != 0) p[Word{}] = q;
      return p;
    };
    auto mul = [](const Poly& x, const Poly& y) {
      Poly out;
      for (const auto& [w1, c1] : x)
        for (const auto& [w2, c2] : y) {
          Word w = w1;
          w.insert(w.end(), w2.begin(), w2.end());
          out[w] += c1 * c2;
        }
      std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
      return out;
    };
    auto add = [](Poly x, const Poly& y, int sign) {
      for (const auto& [w, c] : y) x[w] += sign * c;
      std::erase_if(x, [](const auto& kv) { return kv.second == 0; });
      return x;
    };
    switch (e.kind) {
      case Expr::Kind::number: return constant(Rational(BigInt(e.text)));
      case Expr::Kind::ident: {
        if (auto it = b.find(e.text); it != b.end()) return constant(it->second);
        if (e.text.size() > prefix.size() && e.text.compare(0, prefix.size(), prefix) == 0) {
          auto digits = e.text.substr(prefix.size());
          if (std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            return var(std::stoll(digits));
        }
        throw Error(ErrorCode::UnknownIdentifier, "'" + e.text + "' is not a variable " + prefix + "<i>");
      }
      case Expr::Kind::index: {
        if (e.text != prefix) throw Error(ErrorCode::UnknownIdentifier, "'" + e.text + "' is not the variable family " + prefix);
        Rational i = eval_rational(e.args[0], b);
        if (!is_integer(i)) throw Error(ErrorCode::InvalidArgument, "non-integer variable index");
        return var(static_cast<std::int64_t>(numerator(i)));
      }
      case Expr::Kind::neg: return add(Poly{}, raw_poly(e.args[0], prefix, b), -1);
      case Expr::Kind::binary: {
        if (e.text == "^") {
          std::int64_t k = integer_exponent(eval_rational(e.args[1], b), e);
          if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative power in " + print(e));
          Poly base = raw_poly(e.args[0], prefix, b);
          Poly out = constant(1);
          for (std::int64_t i = 0; i < k; ++i) out = mul(out, base);
          return out;
        }
        if (e.text == "/") {
          Rational d = eval_rational(e.args[1], b);
          if (d == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
          return mul(raw_poly(e.args[0], prefix, b), constant(1 / d));
        }
        Poly l = raw_poly(e.args[0], prefix, b);
        Poly r = raw_poly(e.args[1], prefix, b);
        if (e.text == "*") return mul(l, r);
        return add(l, r, e.text == "+" ? 1 : -1);
      }
      default: throw Error(ErrorCode::TypeMismatch, "unexpected " + print(e) + " in a polynomial template");
    }
  }

  // -------------------------------------------------- evaluation

  Value eval(const Expr& e, const Space& sp, const Bindings& b) const {
    switch (sp.kind) {
      case Space::Kind::ring: return eval_ring(e, sp.ring, b);
      case Space::Kind::series: return eval_series(e, sp.series, b);
      case Space::Kind::poly: return eval_poly(e, sp.poly, b);
    }
    throw Error(ErrorCode::TypeMismatch, "unknown value space");
  }

  const Value* let_value(const std::string& name) const {
    auto it = lets_.find(name);
    return it == lets_.end() ? nullptr : &it->second.second;
  }

  /// Named constants of a ring: algebra variables, the GF generator w.
  static std::optional<Element> ring_symbol(const RingHandle& r, const std::string& name) {
    if (auto* alg = dynamic_cast<const QuotientAlgebra*>(r.get())) {
      const auto& p = alg->var_prefix();
      if (name.size() > p.size() && name.compare(0, p.size(), p) == 0) {
        auto digits = name.substr(p.size());
        if (std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) &&
            digits.size() < 6) {
          long v = std::stol(digits);
          if (v >= 1 && v <= alg->num_vars()) return alg->variable(static_cast<int>(v));
          throw Error(ErrorCode::EscapesTruncation, name + " is beyond the materialized variables");
        }
      }
    }
    if (auto* gf = dynamic_cast<const GaloisFieldRing*>(r.get()); gf && name == "w" && gf->degree() > 1)
      return gf->generator();
    return std::nullopt;
  }

  Element eval_ring(const Expr& e, const RingHandle& r, const Bindings& b) const {
    switch (e.kind) {
      case Expr::Kind::number: return r->integer(BigInt(e.text));
      case Expr::Kind::ident: {
        if (auto it = b.find(e.text); it != b.end()) {
          if (!is_integer(it->second)) throw Error(ErrorCode::TypeMismatch, e.text + " is not an integer");
          return r->integer(numerator(it->second));
        }
        if (const Value* v = let_value(e.text)) {
          const auto* el = std::get_if<Element>(v);
          if (el == nullptr || el->ring() != r)
            throw Error(ErrorCode::TypeMismatch, "'" + e.text + "' is not an element of " + r->name());
          return *el;
        }
        if (auto s = ring_symbol(r, e.text)) return *s;
        throw Error(ErrorCode::UnknownIdentifier, "'" + e.text + "' is not defined in " + r->name());
      }
      case Expr::Kind::index: {
        const auto& alg = as_algebra(r);
        if (e.text != alg.var_prefix()) throw Error(ErrorCode::UnknownIdentifier, "no variable family " + e.text);
        Rational i = eval_rational(e.args[0], b);
        if (!is_integer(i) || i < 1) throw Error(ErrorCode::InvalidArgument, "bad variable index in " + print(e));
        if (i > alg.num_vars()) throw Error(ErrorCode::EscapesTruncation, print(e) + " is beyond the materialized variables");
        return alg.variable(static_cast<int>(numerator(i)));
      }
      case Expr::Kind::call: {
        if (e.text != "conj") throw Error(ErrorCode::TypeMismatch, e.text + "(...) is not a ring element");
        const auto& j = as_jordan(r);
        Rational level = eval_rational(e.args[0], b);
        if (!is_integer(level) || level < 0) throw Error(ErrorCode::InvalidArgument, "conj level must be a nonnegative integer");
        return j.make(static_cast<std::int64_t>(numerator(level)), eval_ring(e.args[1], j.base(), b));
      }
      case Expr::Kind::neg: return -eval_ring(e.args[0], r, b);
      case Expr::Kind::binary: {
        if (e.text == "^") return eval_ring(e.args[0], r, b).pow(nonneg_exponent(e, b));
        if (e.text == "/") {
          auto* alg = dynamic_cast<const QuotientAlgebra*>(r.get());
          Rational d = eval_rational(e.args[1], b);
          if (alg == nullptr || d == 0)
            throw Error(ErrorCode::InvalidArgument, "division only by nonzero scalars in a quotient algebra");
          return eval_ring(e.args[0], r, b) * alg->constant(alg->field().inv(alg->field().normalize(d)));
        }
        Element l = eval_ring(e.args[0], r, b);
        Element rr = eval_ring(e.args[1], r, b);
        if (e.text == "+") return l + rr;
        if (e.text == "-") return l - rr;
        return l * rr;
      }
    }
    throw Error(ErrorCode::TypeMismatch, "cannot evaluate " + print(e));
  }

  static std::uint64_t nonneg_exponent(const Expr& e, const Bindings& b) {
    std::int64_t k = integer_exponent(eval_rational(e.args[1], b), e);
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative power in " + print(e));
    return static_cast<std::uint64_t>(k);
  }

  Series leaf(Series s) const { return trunc_ ? series_truncate(s, *trunc_) : s; }

  Series eval_series(const Expr& e, const ContextHandle& ctx, const Bindings& b) const {
    const auto& r = ctx->ring();
    switch (e.kind) {
      case Expr::Kind::number: return leaf(series_c(ctx, r->integer(BigInt(e.text))));
      case Expr::Kind::ident: {
        if (const Value* v = let_value(e.text)) {
          const auto* s = std::get_if<Series>(v);
          if (s == nullptr || s->context() != ctx)
            throw Error(ErrorCode::TypeMismatch, "'" + e.text + "' is not a series of this context");
          return leaf(*s);
        }
        return leaf(series_c(ctx, eval_ring(e, r, b)));
      }
      case Expr::Kind::index: return leaf(series_c(ctx, eval_ring(e, r, b)));
      case Expr::Kind::call:
        if (e.text == "c") return leaf(series_c(ctx, eval_ring(e.args[0], r, b)));
        if (e.text == "e") return leaf(series_e(ctx, eval_rational(e.args[0], b)));
        throw Error(ErrorCode::TypeMismatch, e.text + "(...) is not a series");
      case Expr::Kind::neg: return -eval_series(e.args[0], ctx, b);
      case Expr::Kind::binary: {
        if (e.text == "^") {
          auto k = nonneg_exponent(e, b);
          Series base = eval_series(e.args[0], ctx, b);
          Series out = leaf(series_c(ctx, r->one()));
          for (std::uint64_t i = 0; i < k; ++i) out = out * base;
          return out;
        }
        if (e.text == "/") throw Error(ErrorCode::TypeMismatch, "'/' is only allowed inside exponents");
        Series l = eval_series(e.args[0], ctx, b);
        Series rr = eval_series(e.args[1], ctx, b);
        if (e.text == "+") return l + rr;
        if (e.text == "-") return l - rr;
        return l * rr;
      }
    }
    throw Error(ErrorCode::TypeMismatch, "cannot evaluate " + print(e));
  }

  TwistedPoly eval_poly(const Expr& e, const TwistHandle& ctx, const Bindings& b) const {
    const auto& r = ctx->ring();
    switch (e.kind) {
      case Expr::Kind::ident:
        if (e.text == "x") return TwistedPoly::monomial(ctx, r->one(), 1);
        if (const Value* v = let_value(e.text)) {
          const auto* p = std::get_if<TwistedPoly>(v);
          if (p == nullptr || p->context() != ctx)
            throw Error(ErrorCode::TypeMismatch, "'" + e.text + "' is not a polynomial of this context");
          return *p;
        }
        return TwistedPoly::constant(ctx, eval_ring(e, r, b));
      case Expr::Kind::number:
      case Expr::Kind::index:
      case Expr::Kind::call: return TwistedPoly::constant(ctx, eval_ring(e, r, b));
      case Expr::Kind::neg: return -eval_poly(e.args[0], ctx, b);
      case Expr::Kind::binary: {
        if (e.text == "^") {
          std::int64_t k = integer_exponent(eval_rational(e.args[1], b), e);
          if (e.args[0].kind == Expr::Kind::ident && e.args[0].text == "x")
            return TwistedPoly::monomial(ctx, r->one(), k);
          if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative power of a non-monomial");
          TwistedPoly base = eval_poly(e.args[0], ctx, b);
          TwistedPoly out = TwistedPoly::constant(ctx, r->one());
          for (std::int64_t i = 0; i < k; ++i) out = out * base;
          return out;
        }
        if (e.text == "/") throw Error(ErrorCode::TypeMismatch, "'/' is only allowed inside exponents");
        TwistedPoly l = eval_poly(e.args[0], ctx, b);
        TwistedPoly rr = eval_poly(e.args[1], ctx, b);
        if (e.text == "+") return l + rr;
        if (e.text == "-") return l + (-rr);
        return l * rr;
      }
    }
    throw Error(ErrorCode::TypeMismatch, "cannot evaluate " + print(e));
  }

  // -------------------------------------------------- commands

  static std::optional<std::string> flag(const Command& c, const std::string& key) {
    for (const auto& [k, v] : c.flags)
      if (k == key) return v;
    return std::nullopt;
  }

  static std::int64_t flag_int(const Command& c, const std::string& key, std::int64_t def) {
    auto v = flag(c, key);
    if (!v) return def;
    try {
      return std::stoll(*v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParameterRange, "--" + key + " needs an integer");
    }
  }

  static Side side_of(const Command& c, Side def) {
    if (c.side.empty()) return def;
    return c.side == "left" ? Side::left : Side::right;
  }

  nlohmann::json run(const Command& c) {
    trunc_.reset();
    if (auto t = flag(c, "trunc")) trunc_ = parse_rational(*t);
    struct Reset {
      std::optional<Rational>& t;
      ~Reset() { t.reset(); }
    } reset{trunc_};
    std::uint64_t seed = static_cast<std::uint64_t>(flag_int(c, "seed", static_cast<std::int64_t>(opts_.seed)));
    auto budget = static_cast<std::size_t>(flag_int(c, "budget", 100000));

    if (c.verb == "scenario") {
      ScenarioParams params(c.params.begin(), c.params.end());
      return run_scenario(c.sub, params).to_json();
    }
    if (c.verb == "probe") {
      auto r = build_ring(*c.ring);
      auto v = archimedean_probe(r, side_of(c, Side::left));
      nlohmann::json j{{"ring", r->name()}, {"archimedean", v.archimedean}, {"nonunits_checked", v.nonunits_checked}};
      j["witness"] = v.witness ? v.witness->to_json() : nlohmann::json(nullptr);
      j["stable_set"] = elements_json(v.stable);
      return j;
    }
    if (c.verb == "annchain") {
      auto r = build_ring(*c.ring);
      std::vector<std::vector<Element>> fams;
      for (const auto& fam : c.families) fams.push_back(family(r, fam));
      auto rep = annihilator_chain(r, fams, side_of(c, Side::left));
      return rep.to_json();
    }
    if (c.verb == "check") return run_check(c, seed);

    Space sp = space_of(c.target);
    if (c.verb == "chain") {
      if (sp.kind != Space::Kind::series) throw Error(ErrorCode::TypeMismatch, "chain runs over a series context");
      std::int64_t n = std::stoll(c.params.at(0).second);
      if (n < 1 || n > 64) throw Error(ErrorCode::ParameterRange, "chain length must be in 1..64");
      std::vector<Series> elems;
      for (std::int64_t i = 0; i < n; ++i) elems.push_back(eval_series(c.exprs[0], sp.series, {{"n", Rational(i)}}));
      return chain_explore(elems, side_of(c, Side::right), budget).to_json();
    }
    Value v = eval(c.exprs[0], sp, {});
    if (c.verb == "eval" || c.verb == "mul" || c.verb == "add")
      return {{"value", value_json(v)}, {"text", value_text(v)}};
    if (c.verb == "pi") {
      if (const auto* s = std::get_if<Series>(&v)) {
        auto t = series_pi(*s);
        return {{"exponent", to_string(t.exponent)}, {"coefficient", t.coefficient.to_json()}};
      }
      if (const auto* p = std::get_if<TwistedPoly>(&v)) {
        auto [lo, hi] = degrees(*p);
        return {{"d_minus", lo}, {"d_plus", hi}};
      }
      throw Error(ErrorCode::TypeMismatch, "pi needs a series or polynomial");
    }
    if (c.verb == "invert") {
      if (const auto* s = std::get_if<Series>(&v)) {
        Rational cutoff = trunc_.value_or(Rational(8));
        auto g = series_invert(*s, cutoff);
        return {{"inverse", g.to_json()}, {"text", g.str()}, {"cutoff", to_string(cutoff)}};
      }
      if (const auto* el = std::get_if<Element>(&v)) {
        auto u = is_unit(*el);
        if (u.decision != Decision::yes)
          throw Error(ErrorCode::InvalidArgument, el->str() + " is not invertible (" + to_string(u.decision) + ")");
        return {{"inverse", u.inverse->to_json()}, {"text", u.inverse->str()}};
      }
      throw Error(ErrorCode::NotComputable, "polynomial inversion is available through 'check unit'");
    }
    if (c.verb == "divide") {
      Value w = eval(c.exprs[1], sp, {});
      const auto* f = std::get_if<Series>(&v);
      const auto* g = std::get_if<Series>(&w);
      if (f == nullptr || g == nullptr) throw Error(ErrorCode::TypeMismatch, "divide runs over a series context");
      return series_divide(*f, *g, side_of(c, Side::right), budget).to_json();
    }
    throw Error(ErrorCode::InvalidArgument, "unknown command " + c.verb);
  }

  std::vector<Element> family(const RingHandle& r, const std::vector<Template>& items) const {
    std::vector<Element> out;
    auto* alg = dynamic_cast<const QuotientAlgebra*>(r.get());
    for (const auto& t : items) {
      std::set<std::string> names;
      collect_index_vars(t.lhs, names, false);
      if (names.empty() && t.conds.empty()) {
        out.push_back(eval_ring(t.lhs, r, {}));
        continue;
      }
      if (alg == nullptr) throw Error(ErrorCode::TypeMismatch, "indexed families need a quotient algebra");
      instantiate(t, alg->num_vars(), [&](const Bindings& b) { out.push_back(eval_ring(t.lhs, r, b)); });
    }
    return out;
  }

  nlohmann::json run_check(const Command& c, std::uint64_t seed) {
    if (c.sub == "unit") {
      Space sp = space_of(c.target);
      Value v = eval(c.exprs[0], sp, {});
      if (const auto* el = std::get_if<Element>(&v)) {
        auto u = is_unit(*el);
        nlohmann::json j{{"unit", to_string(u.decision)}};
        j["inverse"] = u.inverse ? u.inverse->to_json() : nlohmann::json(nullptr);
        return j;
      }
      if (const auto* s = std::get_if<Series>(&v)) {
        if (s->is_zero()) return {{"unit", "no"}, {"reason", "zero series"}};
        auto t = series_pi(*s);
        if (t.exponent != 0 && !s->context()->monoid()->is_unit(t.exponent))
          return {{"unit", "no"}, {"reason", "pi(f) = " + to_string(t.exponent) + " is not a unit of the monoid"}};
        auto u = is_unit(t.coefficient);
        return {{"unit", to_string(u.decision)}, {"reason", "leading coefficient " + t.coefficient.str()}};
      }
      const auto& p = std::get<TwistedPoly>(v);
      auto right = bounded_unit_search(p, 2, 2, Side::right);
      nlohmann::json j{{"unit", right.found ? "yes" : "unknown"}, {"unknowns", right.unknowns},
                       {"reason", right.found ? "right inverse found" : "no inverse of degree <= 2 with coefficients of degree <= 2"}};
      if (right.inverse) {
        j["inverse"] = right.inverse->to_json();
        bool two_sided = (*right.inverse * p) == TwistedPoly::constant(p.context(), p.context()->ring()->one());
        j["two_sided"] = two_sided;
        if (!two_sided) j["unit"] = "unknown";
      }
      return j;
    }
    if (c.sub == "reduced") {
      auto r = build_ring(*c.ring);
      auto v = is_reduced(r, 8, 6);
      nlohmann::json j{{"ring", r->name()}, {"verdict", to_string(v.verdict)}, {"reason", v.reason}};
      j["witness"] = v.witness ? v.witness->to_json() : nlohmann::json(nullptr);
      if (v.witness) j["nilpotency_index"] = v.exponent;
      return j;
    }
    if (c.sub == "rigid" || c.sub == "nonunits") {
      auto r = build_ring(*c.ring);
      const auto& e = find(endos_, c.endo, "endomorphism");
      if (c.sub == "nonunits") {
        auto v = preserves_nonunits(r, e);
        nlohmann::json j{{"decision", to_string(v.decision)}};
        j["witness"] = v.witness ? v.witness->to_json() : nlohmann::json(nullptr);
        return j;
      }
      std::vector<Element> hints;
      for (const auto& h : c.exprs) hints.push_back(eval_ring(h, r, {}));
      auto v = is_rigid(r, e, hints);
      nlohmann::json j{{"verdict", to_string(v.verdict)}, {"exhaustive", v.exhaustive}, {"reason", v.reason}};
      j["witness"] = v.witness ? v.witness->to_json() : nlohmann::json(nullptr);
      return j;
    }
    if (c.sub == "lemmas") {
      int grid = 5;
      for (const auto& [k, v] : c.params) {
        if (k != "grid") throw Error(ErrorCode::ParameterRange, "unknown parameter " + k);
        grid = std::stoi(v);
        if (grid < 1 || grid > 8) throw Error(ErrorCode::ParameterRange, "grid must be in 1..8");
      }
      return rigid_lemma_suite(find(series_, c.target, "context"), grid).to_json();
    }
    // endo
    const auto& e = find(endos_, c.target, "endomorphism");
    auto v = validate_endomorphism(*e, 1000, seed);
    nlohmann::json j{{"ok", v.ok}, {"exhaustive", v.exhaustive}, {"checked", v.checked}, {"law", v.law},
                     {"counterexample", elements_json(v.counterexample)}, {"escaped", e->escaped()}};
    return j;
  }
};

/// Parses and runs a session text. Parse errors propagate as ParseError.
inline nlohmann::json run_session(const std::string& text, RunOptions opts = {}, std::size_t* errors = nullptr) {
  auto ast = parse_session(text);
  Session s(opts);
  return s.run_all(ast, errors);
}

}  // namespace sgps::dsl
