#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sgps/error.hpp"

// Session language. One statement per line (newlines inside brackets are
// ignored, '#' starts a comment):
//
//   ring R = Z | Zmod(n) | GF(p) | GF(p, k) | Jordan(R0, E)
//          | QuotAlg(Q | GF(p); vars x1..xN; rels {TEMPLATE, ...}; comm | noncomm [; degcap=D])
//   endo E on R = id | frobenius [^k] | varmap {TEMPLATE, ...}
//   monoid M = Nat | Int | QNonNeg | Q
//   context A = R[[M; id | E]] | R[x; id | E] | R[x, x^-1; id | E]
//   let f = A : EXPR
//
//   TEMPLATE = EXPR [-> EXPR] [if COND {and COND}]   with COND = a OP b | a even | a odd
//
// Commands (flags --trunc=q --budget=n --seed=n --json may follow any command):
//   eval|mul|add|pi|invert T : EXPR
//   divide T : EXPR by EXPR [left|right]
//   chain T EXPR(n) n=K [left|right]
//   probe archimedean RING [left|right]
//   check unit T : EXPR | check reduced RING | check rigid RING E [hint EXPR]
//   check nonunits RING E | check lemmas A [grid=g] | check endo E
//   annchain RING [left|right] {TEMPLATE, ...} {TEMPLATE, ...} ...
//   scenario ID [key=value ...]

namespace sgps::dsl {

struct SourcePos {
  int line = 1;
  int column = 1;
};

// ---------------------------------------------------------------- lexer

enum class Tok { ident, integer, symbol, flag, newline, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourcePos pos;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  int depth = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  static const std::vector<std::string> symbols{"[[", "]]", "->", "..", "<=", ">=", "==", "!=", "(", ")", "[", "]",
                                                "{",  "}",  ",",  ";",  ":",  "=",  "+",  "-",  "*", "/", "^", "<", ">"};
  while (i < src.size()) {
    char c = src[i];
    SourcePos pos{line, col};
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      if (depth == 0 && !out.empty() && out.back().kind != Tok::newline) out.push_back({Tok::newline, "\n", pos});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::integer, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && is_ident(src[j])) ++j;
      out.push_back({Tok::ident, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 2 < src.size() && src[i + 1] == '-' && std::isalpha(static_cast<unsigned char>(src[i + 2]))) {
      std::size_t j = i + 2;
      while (j < src.size() && !std::isspace(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::flag, src.substr(i + 2, j - i - 2), pos});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const auto& s : symbols)
      if (src.compare(i, s.size(), s) == 0) {
        if (s == "(" || s == "[" || s == "{") ++depth;
        if (s == "[[") depth += 2;
        if (s == ")" || s == "]" || s == "}") depth = std::max(0, depth - 1);
        if (s == "]]") depth = std::max(0, depth - 2);
        out.push_back({Tok::symbol, s, pos});
        advance(s.size());
        matched = true;
        break;
      }
    if (!matched) throw ParseError(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", pos.line, pos.column);
  }
  if (!out.empty() && out.back().kind != Tok::newline) out.push_back({Tok::newline, "\n", {line, col}});
  out.push_back({Tok::end, "", {line, col}});
  return out;
}

// ---------------------------------------------------------------- AST

struct Expr {
  enum class Kind { number, ident, call, index, neg, binary };
  Kind kind = Kind::number;
  std::string text;  // digits, name, callee, indexed name, or the operator
  std::vector<Expr> args;
  SourcePos pos;

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.text == b.text && a.args == b.args;
  }
};

struct Cond {
  Expr lhs;
  std::string op;  // == != < <= > >= even odd
  std::optional<Expr> rhs;
  friend bool operator==(const Cond&, const Cond&) = default;
};

/// Indexed pattern such as x[i]*x[j] -> 0 if i != j.
struct Template {
  Expr lhs;
  std::optional<Expr> rhs;
  std::vector<Cond> conds;
  friend bool operator==(const Template&, const Template&) = default;
};

struct RingSpec {
  std::string kind;  // ref Z Zmod GF QuotAlg Jordan
  std::string ref;   // ref: ring name; Jordan: base ring name
  std::string endo;  // Jordan twist
  std::vector<std::int64_t> ints;
  std::string field;  // QuotAlg: "Q" or "GF(p)"
  std::string prefix;
  std::int64_t nvars = 0;
  std::vector<Template> rels;
  bool commutative = true;
  std::optional<std::int64_t> degcap;
  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

struct EndoSpec {
  std::string kind;  // id frobenius varmap
  std::int64_t power = 1;
  std::vector<Template> rules;
  friend bool operator==(const EndoSpec&, const EndoSpec&) = default;
};

struct ContextSpec {
  std::string kind;  // series skew laurent
  std::string ring;
  std::string monoid;  // series only
  std::string endo;    // "id" or endo name
  friend bool operator==(const ContextSpec&, const ContextSpec&) = default;
};

struct Decl {
  std::string kind;  // ring endo monoid context let
  std::string name;
  RingSpec ring;
  EndoSpec endo;
  std::string on;  // endo: ring name; let: target name
  std::string monoid;
  ContextSpec context;
  std::optional<Expr> value;  // let
  friend bool operator==(const Decl&, const Decl&) = default;
};

struct Command {
  std::string verb;  // eval mul add pi invert divide chain probe check annchain scenario
  std::string sub;   // probe/check subcommand; scenario id
  std::string target;
  std::optional<RingSpec> ring;
  std::string endo;
  std::vector<Expr> exprs;
  std::vector<std::vector<Template>> families;
  std::string side;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::string>> flags;
  friend bool operator==(const Command&, const Command&) = default;
};

struct Statement {
  std::variant<Decl, Command> node;
  SourcePos pos;
  friend bool operator==(const Statement& a, const Statement& b) { return a.node == b.node; }
};

struct SessionAST {
  std::vector<Statement> statements;
  friend bool operator==(const SessionAST&, const SessionAST&) = default;
};

/// What a declared name denotes; drives the static checks.
enum class SymbolKind { ring, endo, monoid, series_context, skew_context, laurent_context, let };

// ---------------------------------------------------------------- printer

namespace detail {

inline int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::binary) {
    if (e.text == "+" || e.text == "-") return 1;
    if (e.text == "*" || e.text == "/") return 2;
    return 4;  // ^
  }
  if (e.kind == Expr::Kind::neg) return 3;
  return 5;
}

}  // namespace detail

inline std::string print(const Expr& e) {
  using detail::precedence;
  auto wrap = [](const Expr& x, bool parens) { return parens ? "(" + print(x) + ")" : print(x); };
  switch (e.kind) {
    case Expr::Kind::number:
    case Expr::Kind::ident: return e.text;
    case Expr::Kind::call: {
      std::string s = e.text + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + print(e.args[i]);
      return s + ")";
    }
    case Expr::Kind::index: return e.text + "[" + print(e.args[0]) + "]";
    case Expr::Kind::neg: return "-" + wrap(e.args[0], precedence(e.args[0]) < 3 || e.args[0].kind == Expr::Kind::neg);
    case Expr::Kind::binary: {
      int p = precedence(e);
      const Expr& l = e.args[0];
      const Expr& r = e.args[1];
      if (e.text == "^")
        return wrap(l, precedence(l) <= 4) + "^" + wrap(r, precedence(r) < 3);
      std::string sep = p == 1 ? " " + e.text + " " : e.text;
      return wrap(l, precedence(l) < p) + sep + wrap(r, precedence(r) <= p);
    }
  }
  return "?";
}

inline std::string print(const Cond& c) {
  if (!c.rhs) return print(c.lhs) + " " + c.op;
  return print(c.lhs) + " " + c.op + " " + print(*c.rhs);
}

inline std::string print(const Template& t) {
  std::string s = print(t.lhs);
  if (t.rhs) s += " -> " + print(*t.rhs);
  for (std::size_t i = 0; i < t.conds.size(); ++i) s += (i ? " and " : " if ") + print(t.conds[i]);
  return s;
}

inline std::string print_templates(const std::vector<Template>& ts) {
  std::string s = "{";
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? ", " : "") + print(ts[i]);
  return s + "}";
}

inline std::string print(const RingSpec& r) {
  if (r.kind == "ref") return r.ref;
  if (r.kind == "Z") return "Z";
  if (r.kind == "Zmod") return "Zmod(" + std::to_string(r.ints.at(0)) + ")";
  if (r.kind == "GF") {
    std::string s = "GF(" + std::to_string(r.ints.at(0));
    if (r.ints.size() > 1) s += ", " + std::to_string(r.ints[1]);
    return s + ")";
  }
  if (r.kind == "Jordan") return "Jordan(" + r.ref + ", " + r.endo + ")";
  std::string s = "QuotAlg(" + r.field + "; vars " + r.prefix + "1.." + r.prefix + std::to_string(r.nvars) +
                  "; rels " + print_templates(r.rels) + "; " + (r.commutative ? "comm" : "noncomm");
  if (r.degcap) s += "; degcap=" + std::to_string(*r.degcap);
  return s + ")";
}

inline std::string print(const EndoSpec& e) {
  if (e.kind == "id") return "id";
  if (e.kind == "frobenius") return e.power == 1 ? "frobenius" : "frobenius^" + std::to_string(e.power);
  return "varmap " + print_templates(e.rules);
}

inline std::string print(const Decl& d) {
  if (d.kind == "ring") return "ring " + d.name + " = " + print(d.ring);
  if (d.kind == "endo") return "endo " + d.name + " on " + d.on + " = " + print(d.endo);
  if (d.kind == "monoid") return "monoid " + d.name + " = " + d.monoid;
  if (d.kind == "context") {
    const auto& c = d.context;
    std::string body = c.kind == "series" ? "[[" + c.monoid + "; " + c.endo + "]]"
                       : c.kind == "skew" ? "[x; " + c.endo + "]"
                                          : "[x, x^-1; " + c.endo + "]";
    return "context " + d.name + " = " + c.ring + body;
  }
  return "let " + d.name + " = " + d.on + " : " + print(*d.value);
}

inline std::string print(const Command& c) {
  std::string s = c.verb;
  auto ring_text = [&] { return c.ring ? print(*c.ring) : c.target; };
  if (c.verb == "scenario") {
    s += " " + c.sub;
  } else if (c.verb == "probe") {
    s += " " + c.sub + " " + ring_text();
  } else if (c.verb == "chain") {
    s += " " + c.target + " " + print(c.exprs.at(0));
  } else if (c.verb == "annchain") {
    s += " " + ring_text();
  } else if (c.verb == "check") {
    s += " " + c.sub;
    if (c.sub == "unit") s += " " + c.target + " : " + print(c.exprs.at(0));
    else if (c.sub == "reduced") s += " " + ring_text();
    else if (c.sub == "rigid" || c.sub == "nonunits") {
      s += " " + ring_text() + " " + c.endo;
      for (const auto& h : c.exprs) s += " hint " + print(h);
    } else s += " " + c.target;
  } else if (c.verb == "divide") {
    s += " " + c.target + " : " + print(c.exprs.at(0)) + " by " + print(c.exprs.at(1));
  } else {
    s += " " + c.target + " : " + print(c.exprs.at(0));
  }
  if (!c.side.empty()) s += " " + c.side;
  for (const auto& fam : c.families) s += " " + print_templates(fam);
  for (const auto& [k, v] : c.params) s += " " + k + "=" + v;
  for (const auto& [k, v] : c.flags) s += " --" + k + (v.empty() ? "" : "=" + v);
  return s;
}

inline std::string print(const Statement& st) {
  return std::visit([](const auto& n) { return print(n); }, st.node);
}

inline std::string print(const SessionAST& ast) {
  std::string s;
  for (const auto& st : ast.statements) s += print(st) + "\n";
  return s;
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  SessionAST parse() {
    SessionAST ast;
    while (peek().kind != Tok::end) {
      if (peek().kind == Tok::newline) {
        ++pos_;
        continue;
      }
      ast.statements.push_back(statement());
      if (peek().kind != Tok::newline) fail("expected end of statement, found '" + peek().text + "'");
      ++pos_;
    }
    return ast;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, SymbolKind> symbols_;
  std::map<std::string, std::string> let_target_;

  // -------------------------------------------------- token helpers

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::SyntaxError) const {
    throw ParseError(code, msg, peek().pos.line, peek().pos.column);
  }
  [[noreturn]] static void fail_at(const SourcePos& p, const std::string& msg, ErrorCode code) {
    throw ParseError(code, msg, p.line, p.column);
  }

  bool at_symbol(const std::string& s) const { return peek().kind == Tok::symbol && peek().text == s; }
  bool at_word(const std::string& s) const { return peek().kind == Tok::ident && peek().text == s; }

  void expect_symbol(const std::string& s) {
    if (!at_symbol(s)) fail("expected '" + s + "', found '" + describe(peek()) + "'");
    ++pos_;
  }
  void expect_word(const std::string& s) {
    if (!at_word(s)) fail("expected '" + s + "', found '" + describe(peek()) + "'");
    ++pos_;
  }
  std::string ident() {
    if (peek().kind != Tok::ident) fail("expected identifier, found '" + describe(peek()) + "'");
    return toks_[pos_++].text;
  }
  std::int64_t integer() {
    bool negative = false;
    if (at_symbol("-")) {
      negative = true;
      ++pos_;
    }
    if (peek().kind != Tok::integer) fail("expected integer, found '" + describe(peek()) + "'");
    try {
      std::int64_t v = std::stoll(toks_[pos_++].text);
      return negative ? -v : v;
    } catch (const std::out_of_range&) {
      --pos_;
      fail("integer literal out of range");
    }
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::newline) return "end of line";
    if (t.kind == Tok::end) return "end of input";
    return t.text;
  }

  // -------------------------------------------------- symbols

  void declare(const std::string& name, SymbolKind kind, const SourcePos& p) {
    if (symbols_.count(name)) fail_at(p, "'" + name + "' is already declared", ErrorCode::UnknownIdentifier);
    symbols_[name] = kind;
  }
  SymbolKind lookup(const std::string& name, const SourcePos& p) const {
    auto it = symbols_.find(name);
    if (it == symbols_.end()) fail_at(p, "'" + name + "' is not declared", ErrorCode::UnknownIdentifier);
    return it->second;
  }
  void require_kind(const std::string& name, const SourcePos& p, std::initializer_list<SymbolKind> kinds,
                    const std::string& what) const {
    auto k = lookup(name, p);
    for (auto want : kinds)
      if (k == want) return;
    fail_at(p, "'" + name + "' is not " + what, ErrorCode::TypeMismatch);
  }
  /// Kind of the value space of a command target (let names resolve to theirs).
  SymbolKind target_kind(const std::string& name, const SourcePos& p) const {
    auto k = lookup(name, p);
    if (k == SymbolKind::let) return target_kind(let_target_.at(name), p);
    if (k == SymbolKind::endo || k == SymbolKind::monoid)
      fail_at(p, "'" + name + "' is not a ring or context", ErrorCode::TypeMismatch);
    return k;
  }

  /// c(...)/e(...) only make sense over series, x only over polynomials.
  void check_expr(const Expr& e, SymbolKind space) const {
    if (e.kind == Expr::Kind::call && (e.text == "c" || e.text == "e") && space != SymbolKind::series_context)
      fail_at(e.pos, "series literal " + e.text + "(...) outside a series context", ErrorCode::TypeMismatch);
    if (e.kind == Expr::Kind::ident && e.text == "x" && space != SymbolKind::skew_context &&
        space != SymbolKind::laurent_context)
      fail_at(e.pos, "polynomial variable x outside a polynomial context", ErrorCode::TypeMismatch);
    if (e.kind == Expr::Kind::ident && symbols_.count(e.text)) {
      auto k = symbols_.at(e.text);
      if (k != SymbolKind::let) fail_at(e.pos, "'" + e.text + "' is not a value", ErrorCode::TypeMismatch);
    }
    bool inner_ring = e.kind == Expr::Kind::call && e.text == "c";
    bool inner_rational = e.kind == Expr::Kind::call && e.text == "e";
    for (std::size_t i = 0; i < e.args.size(); ++i) {
      if (inner_rational || (e.kind == Expr::Kind::binary && e.text == "^" && i == 1) || e.kind == Expr::Kind::index)
        continue;
      check_expr(e.args[i], inner_ring ? SymbolKind::ring : space);
    }
  }

  // -------------------------------------------------- statements

  Statement statement() {
    SourcePos p = peek().pos;
    if (peek().kind != Tok::ident) fail("expected a statement keyword");
    const std::string kw = peek().text;
    if (kw == "ring" || kw == "endo" || kw == "monoid" || kw == "context" || kw == "let") return {declaration(), p};
    static const std::set<std::string> verbs{"eval", "mul", "add", "pi", "invert", "divide", "chain",
                                             "probe", "check", "annchain", "scenario"};
    if (!verbs.count(kw)) fail("unknown statement '" + kw + "'");
    return {command(), p};
  }

  Decl declaration() {
    Decl d;
    d.kind = ident();
    SourcePos name_pos = peek().pos;
    d.name = ident();
    if (d.kind == "ring") {
      expect_symbol("=");
      d.ring = ring_spec(false);
      declare(d.name, SymbolKind::ring, name_pos);
    } else if (d.kind == "endo") {
      expect_word("on");
      SourcePos rp = peek().pos;
      d.on = ident();
      require_kind(d.on, rp, {SymbolKind::ring}, "a ring");
      expect_symbol("=");
      d.endo = endo_spec();
      declare(d.name, SymbolKind::endo, name_pos);
    } else if (d.kind == "monoid") {
      expect_symbol("=");
      d.monoid = ident();
      static const std::set<std::string> ok{"Nat", "Int", "QNonNeg", "Q"};
      if (!ok.count(d.monoid)) fail_at(name_pos, "unknown monoid '" + d.monoid + "'", ErrorCode::SyntaxError);
      declare(d.name, SymbolKind::monoid, name_pos);
    } else if (d.kind == "context") {
      expect_symbol("=");
      d.context = context_spec();
      auto kind = d.context.kind == "series" ? SymbolKind::series_context
                  : d.context.kind == "skew" ? SymbolKind::skew_context
                                             : SymbolKind::laurent_context;
      declare(d.name, kind, name_pos);
    } else {
      expect_symbol("=");
      SourcePos tp = peek().pos;
      d.on = ident();
      auto space = target_kind(d.on, tp);
      expect_symbol(":");
      d.value = expr();
      check_expr(*d.value, space);
      declare(d.name, SymbolKind::let, name_pos);
      let_target_[d.name] = d.on;
    }
    return d;
  }

  RingSpec ring_spec(bool allow_ref) {
    RingSpec r;
    SourcePos p = peek().pos;
    std::string head = ident();
    if (head == "Z") {
      r.kind = "Z";
    } else if (head == "Zmod") {
      r.kind = "Zmod";
      expect_symbol("(");
      r.ints.push_back(integer());
      expect_symbol(")");
    } else if (head == "GF") {
      r.kind = "GF";
      expect_symbol("(");
      r.ints.push_back(integer());
      if (at_symbol(",")) {
        ++pos_;
        r.ints.push_back(integer());
      }
      expect_symbol(")");
    } else if (head == "Jordan") {
      r.kind = "Jordan";
      expect_symbol("(");
      SourcePos bp = peek().pos;
      r.ref = ident();
      require_kind(r.ref, bp, {SymbolKind::ring}, "a ring");
      expect_symbol(",");
      SourcePos ep = peek().pos;
      r.endo = ident();
      require_kind(r.endo, ep, {SymbolKind::endo}, "an endomorphism");
      expect_symbol(")");
    } else if (head == "QuotAlg") {
      r.kind = "QuotAlg";
      quotalg(r);
    } else if (allow_ref) {
      r.kind = "ref";
      r.ref = head;
      require_kind(head, p, {SymbolKind::ring}, "a ring");
    } else {
      fail_at(p, "unknown ring constructor '" + head + "'", ErrorCode::SyntaxError);
    }
    return r;
  }

  void quotalg(RingSpec& r) {
    expect_symbol("(");
    if (at_word("Q")) {
      ++pos_;
      r.field = "Q";
    } else {
      expect_word("GF");
      expect_symbol("(");
      r.field = "GF(" + std::to_string(integer()) + ")";
      expect_symbol(")");
    }
    expect_symbol(";");
    expect_word("vars");
    SourcePos vp = peek().pos;
    std::string first = ident();
    expect_symbol("..");
    std::string last = ident();
    auto split = [&](const std::string& v) {
      std::size_t k = v.size();
      while (k > 0 && std::isdigit(static_cast<unsigned char>(v[k - 1]))) --k;
      if (k == 0 || k == v.size()) fail_at(vp, "variables must look like x1..xN", ErrorCode::SyntaxError);
      return std::pair<std::string, std::int64_t>(v.substr(0, k), std::stoll(v.substr(k)));
    };
    auto [p1, n1] = split(first);
    auto [p2, n2] = split(last);
    if (p1 != p2 || n1 != 1 || n2 < 1) fail_at(vp, "variables must run x1..xN", ErrorCode::SyntaxError);
    r.prefix = p1;
    r.nvars = n2;
    expect_symbol(";");
    expect_word("rels");
    r.rels = templates(true);
    expect_symbol(";");
    if (at_word("comm")) r.commutative = true;
    else if (at_word("noncomm")) r.commutative = false;
    else fail("expected comm or noncomm");
    ++pos_;
    if (at_symbol(";")) {
      ++pos_;
      expect_word("degcap");
      expect_symbol("=");
      r.degcap = integer();
    }
    expect_symbol(")");
  }

  EndoSpec endo_spec() {
    EndoSpec e;
    std::string head = ident();
    if (head == "id") {
      e.kind = "id";
    } else if (head == "frobenius") {
      e.kind = "frobenius";
      if (at_symbol("^")) {
        ++pos_;
        e.power = integer();
      }
    } else if (head == "varmap") {
      e.kind = "varmap";
      e.rules = templates(true);
    } else {
      fail("unknown endomorphism '" + head + "'");
    }
    return e;
  }

  ContextSpec context_spec() {
    ContextSpec c;
    SourcePos rp = peek().pos;
    c.ring = ident();
    require_kind(c.ring, rp, {SymbolKind::ring}, "a ring");
    auto endo_name = [&] {
      SourcePos ep = peek().pos;
      std::string e = ident();
      if (e != "id") require_kind(e, ep, {SymbolKind::endo}, "an endomorphism");
      return e;
    };
    if (at_symbol("[[")) {
      ++pos_;
      c.kind = "series";
      SourcePos mp = peek().pos;
      c.monoid = ident();
      require_kind(c.monoid, mp, {SymbolKind::monoid}, "a monoid");
      expect_symbol(";");
      c.endo = endo_name();
      expect_symbol("]]");
      return c;
    }
    expect_symbol("[");
    expect_word("x");
    if (at_symbol(",")) {
      ++pos_;
      expect_word("x");
      expect_symbol("^");
      expect_symbol("-");
      if (peek().kind != Tok::integer || peek().text != "1") fail("expected x^-1");
      ++pos_;
      c.kind = "laurent";
    } else {
      c.kind = "skew";
    }
    expect_symbol(";");
    c.endo = endo_name();
    expect_symbol("]");
    return c;
  }

  std::vector<Template> templates(bool with_rhs) {
    std::vector<Template> out;
    expect_symbol("{");
    while (!at_symbol("}")) {
      Template t;
      t.lhs = expr();
      if (with_rhs) {
        expect_symbol("->");
        t.rhs = expr();
      }
      if (at_word("if")) {
        ++pos_;
        t.conds.push_back(cond());
        while (at_word("and")) {
          ++pos_;
          t.conds.push_back(cond());
        }
      }
      out.push_back(std::move(t));
      if (!at_symbol(",")) break;
      ++pos_;
    }
    expect_symbol("}");
    return out;
  }

  Cond cond() {
    Cond c;
    c.lhs = expr();
    if (at_word("even") || at_word("odd")) {
      c.op = toks_[pos_++].text;
      return c;
    }
    static const std::set<std::string> ops{"==", "!=", "<", "<=", ">", ">="};
    if (peek().kind != Tok::symbol || !ops.count(peek().text)) fail("expected a comparison");
    c.op = toks_[pos_++].text;
    c.rhs = expr();
    return c;
  }

  std::string side_opt() {
    if (at_word("left") || at_word("right")) return toks_[pos_++].text;
    return "";
  }

  void trailing(Command& c, bool allow_params) {
    while (peek().kind == Tok::ident && peek(1).kind == Tok::symbol && peek(1).text == "=") {
      if (!allow_params) fail("unexpected parameter '" + peek().text + "'");
      std::string key = ident();
      ++pos_;
      std::string value;
      // values are literals: integers, rationals p/q, or words
      if (peek().kind == Tok::ident) {
        value = ident();
      } else {
        value = std::to_string(integer());
        if (at_symbol("/")) {
          ++pos_;
          value += "/" + std::to_string(integer());
        }
      }
      c.params.emplace_back(key, value);
    }
    while (peek().kind == Tok::flag) {
      const std::string& f = toks_[pos_].text;
      auto eq = f.find('=');
      std::string key = f.substr(0, eq);
      std::string value = eq == std::string::npos ? "" : f.substr(eq + 1);
      static const std::set<std::string> known{"trunc", "budget", "seed", "json"};
      if (!known.count(key)) fail("unknown flag --" + key);
      if ((key == "json") != value.empty()) fail("flag --" + key + (key == "json" ? " takes no value" : " needs a value"));
      c.flags.emplace_back(key, value);
      ++pos_;
    }
  }

  Command command() {
    Command c;
    c.verb = ident();
    auto value_target = [&] {
      SourcePos tp = peek().pos;
      c.target = ident();
      auto space = target_kind(c.target, tp);
      return space;
    };
    if (c.verb == "scenario") {
      // scenario ids are hyphenated words: ex-qchain
      c.sub = ident();
      while (at_symbol("-") && peek(1).kind == Tok::ident) {
        pos_ += 1;
        c.sub += "-" + ident();
      }
      trailing(c, true);
      return c;
    }
    if (c.verb == "probe") {
      c.sub = ident();
      if (c.sub != "archimedean") fail("only 'probe archimedean' is supported");
      c.ring = ring_spec(true);
      c.side = side_opt();
      trailing(c, false);
      return c;
    }
    if (c.verb == "annchain") {
      c.ring = ring_spec(true);
      c.side = side_opt();
      while (at_symbol("{")) c.families.push_back(templates(false));
      if (c.families.empty()) fail("annchain needs at least one family {...}");
      trailing(c, false);
      return c;
    }
    if (c.verb == "chain") {
      auto space = value_target();
      c.exprs.push_back(expr());
      check_expr(c.exprs[0], space);
      c.side = side_opt();
      trailing(c, true);
      if (c.params.size() != 1 || c.params[0].first != "n") fail("chain needs n=LENGTH");
      if (c.side.empty()) {
        c.side = side_opt();
        trailing(c, false);
      }
      return c;
    }
    if (c.verb == "check") {
      c.sub = ident();
      if (c.sub == "unit") {
        auto space = value_target();
        expect_symbol(":");
        c.exprs.push_back(expr());
        check_expr(c.exprs[0], space);
      } else if (c.sub == "reduced") {
        c.ring = ring_spec(true);
      } else if (c.sub == "rigid" || c.sub == "nonunits") {
        c.ring = ring_spec(true);
        SourcePos ep = peek().pos;
        c.endo = ident();
        require_kind(c.endo, ep, {SymbolKind::endo}, "an endomorphism");
        while (c.sub == "rigid" && at_word("hint")) {
          ++pos_;
          c.exprs.push_back(expr());
          check_expr(c.exprs.back(), SymbolKind::ring);
        }
      } else if (c.sub == "lemmas") {
        SourcePos tp = peek().pos;
        c.target = ident();
        require_kind(c.target, tp, {SymbolKind::series_context}, "a series context");
        trailing(c, true);
        return c;
      } else if (c.sub == "endo") {
        SourcePos tp = peek().pos;
        c.target = ident();
        require_kind(c.target, tp, {SymbolKind::endo}, "an endomorphism");
      } else {
        fail("unknown check '" + c.sub + "'");
      }
      trailing(c, false);
      return c;
    }
    auto space = value_target();
    expect_symbol(":");
    SourcePos ep = peek().pos;
    c.exprs.push_back(expr());
    check_expr(c.exprs[0], space);
    if (c.verb == "divide") {
      expect_word("by");
      c.exprs.push_back(expr());
      check_expr(c.exprs[1], space);
      c.side = side_opt();
    }
    const Expr& top = c.exprs[0];
    if (c.verb == "mul" && !(top.kind == Expr::Kind::binary && top.text == "*"))
      fail_at(ep, "mul expects a product a * b", ErrorCode::TypeMismatch);
    if (c.verb == "add" && !(top.kind == Expr::Kind::binary && (top.text == "+" || top.text == "-")))
      fail_at(ep, "add expects a sum a + b", ErrorCode::TypeMismatch);
    trailing(c, false);
    return c;
  }

  // -------------------------------------------------- expressions

  Expr make(Expr::Kind k, std::string text, std::vector<Expr> args, SourcePos p) {
    Expr e;
    e.kind = k;
    e.text = std::move(text);
    e.args = std::move(args);
    e.pos = p;
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    while (at_symbol("+") || at_symbol("-")) {
      SourcePos p = peek().pos;
      std::string op = toks_[pos_++].text;
      lhs = make(Expr::Kind::binary, op, {lhs, term()}, p);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (at_symbol("*") || at_symbol("/")) {
      SourcePos p = peek().pos;
      std::string op = toks_[pos_++].text;
      lhs = make(Expr::Kind::binary, op, {lhs, unary()}, p);
    }
    return lhs;
  }

  Expr unary() {
    if (at_symbol("-")) {
      SourcePos p = peek().pos;
      ++pos_;
      return make(Expr::Kind::neg, "-", {unary()}, p);
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (at_symbol("^")) {
      SourcePos p = peek().pos;
      ++pos_;
      return make(Expr::Kind::binary, "^", {base, unary()}, p);
    }
    return base;
  }

  Expr atom() {
    SourcePos p = peek().pos;
    if (peek().kind == Tok::integer) return make(Expr::Kind::number, toks_[pos_++].text, {}, p);
    if (at_symbol("(")) {
      ++pos_;
      Expr e = expr();
      expect_symbol(")");
      return e;
    }
    if (peek().kind != Tok::ident) fail("expected an expression, found '" + describe(peek()) + "'");
    std::string name = ident();
    if (at_symbol("(")) {
      ++pos_;
      std::vector<Expr> args;
      if (!at_symbol(")")) {
        args.push_back(expr());
        while (at_symbol(",")) {
          ++pos_;
          args.push_back(expr());
        }
      }
      expect_symbol(")");
      static const std::map<std::string, std::size_t> arity{{"c", 1}, {"e", 1}, {"conj", 2}};
      auto it = arity.find(name);
      if (it == arity.end()) fail_at(p, "unknown function '" + name + "'", ErrorCode::UnknownIdentifier);
      if (args.size() != it->second) fail_at(p, name + " takes " + std::to_string(it->second) + " argument(s)", ErrorCode::SyntaxError);
      return make(Expr::Kind::call, name, std::move(args), p);
    }
    if (at_symbol("[")) {
      ++pos_;
      Expr idx = expr();
      expect_symbol("]");
      return make(Expr::Kind::index, name, {idx}, p);
    }
    return make(Expr::Kind::ident, name, {}, p);
  }
};

inline SessionAST parse_session(const std::string& text) { return Parser(text).parse(); }

}  // namespace sgps::dsl
