#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "sgps/numeric.hpp"

namespace sgps {

enum class MonoidKind { nat, integer, rat_nonneg, rat };

/// Additive exponent monoid with its natural strict total order. Every
/// value is an exact Rational; the carrier restricts which ones are allowed.
class Monoid {
 public:
  explicit Monoid(MonoidKind kind) : kind_(kind) {}

  MonoidKind kind() const noexcept { return kind_; }

  std::string name() const {
    switch (kind_) {
      case MonoidKind::nat: return "Nat";
      case MonoidKind::integer: return "Int";
      case MonoidKind::rat_nonneg: return "QNonNeg";
      case MonoidKind::rat: return "Q";
    }
    return "?";
  }

  bool integral() const noexcept { return kind_ == MonoidKind::nat || kind_ == MonoidKind::integer; }
  bool nonnegative() const noexcept { return kind_ == MonoidKind::nat || kind_ == MonoidKind::rat_nonneg; }
  /// The carrier is well-ordered by <= (nat), or every series support must
  /// be bounded below to be well-ordered (the other kinds).
  bool declared_artinian() const noexcept { return nonnegative(); }

  bool contains(const Rational& q) const {
    if (integral() && !is_integer(q)) return false;
    if (nonnegative() && q < 0) return false;
    return true;
  }

  const Rational& check(const Rational& q) const {
    if (!contains(q)) throw Error(ErrorCode::OutOfCarrier, to_string(q) + " is not in " + name());
    return q;
  }

  Rational op(const Rational& a, const Rational& b) const { return check(check(a) + check(b)); }
  int compare(const Rational& a, const Rational& b) const {
    check(a);
    check(b);
    return a < b ? -1 : (b < a ? 1 : 0);
  }
  Rational identity() const { return 0; }

  /// u is a unit iff -u lies in the carrier.
  bool is_unit(const Rational& u) const { return contains(u) && contains(-u); }

  std::string units_description() const { return nonnegative() ? "{0}" : "all of " + name(); }

  Rational random(Rng& rng) const {
    std::uniform_int_distribution<int> num(nonnegative() ? 0 : -40, 40);
    if (integral()) return Rational(num(rng));
    std::uniform_int_distribution<int> den(1, 8);
    int n = num(rng);
    return Rational(n, den(rng));
  }

  bool operator==(const Monoid& o) const noexcept { return kind_ == o.kind_; }

 private:
  MonoidKind kind_;
};

using MonoidHandle = std::shared_ptr<const Monoid>;

inline MonoidHandle make_monoid(MonoidKind kind) { return std::make_shared<Monoid>(kind); }

inline std::optional<MonoidKind> parse_monoid_kind(const std::string& s) {
  if (s == "Nat" || s == "nat") return MonoidKind::nat;
  if (s == "Int" || s == "int") return MonoidKind::integer;
  if (s == "QNonNeg" || s == "rat-nonneg") return MonoidKind::rat_nonneg;
  if (s == "Q" || s == "rat") return MonoidKind::rat;
  return std::nullopt;
}

/// Triple (a, b, c) with a < b but not (c*a < c*b and a*c < b*c).
template <class T>
struct OrderViolation {
  T a, b, c;
  bool left;  // true when c*a < c*b fails
};

/// Exhaustive strictness check over a finite carrier table.
template <class T, class Op, class Less>
std::optional<OrderViolation<T>> verify_strict_order(const std::vector<T>& elements, Op op, Less less) {
  for (const auto& a : elements)
    for (const auto& b : elements) {
      if (!less(a, b)) continue;
      for (const auto& c : elements) {
        if (!less(op(c, a), op(c, b))) return OrderViolation<T>{a, b, c, true};
        if (!less(op(a, c), op(b, c))) return OrderViolation<T>{a, b, c, false};
      }
    }
  return std::nullopt;
}

struct StrictOrderReport {
  bool pass = true;
  std::size_t checked = 0;
  std::optional<OrderViolation<Rational>> witness;
};

/// Sampled strictness and totality check of a built-in monoid.
inline StrictOrderReport verify_strict_order(const Monoid& m, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  StrictOrderReport out;
  for (std::size_t i = 0; i < samples; ++i) {
    Rational a = m.random(rng), b = m.random(rng), c = m.random(rng);
    if (b < a) std::swap(a, b);
    ++out.checked;
    if (a == b) continue;
    if (m.compare(m.op(c, a), m.op(c, b)) >= 0) out.witness = OrderViolation<Rational>{a, b, c, true};
    else if (m.compare(m.op(a, c), m.op(b, c)) >= 0) out.witness = OrderViolation<Rational>{a, b, c, false};
    if (out.witness) {
      out.pass = false;
      return out;
    }
  }
  return out;
}

struct ArtinianReport {
  bool pass = true;
  std::vector<Rational> sorted;
  std::string narrowness;
};

/// Finite subsets of a totally ordered monoid are trivially Artinian and
/// narrow; the sorted presentation is what series normalization uses.
inline ArtinianReport check_artinian_narrow(std::vector<Rational> subset, const Monoid& m) {
  for (const auto& q : subset) m.check(q);
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  return {true, std::move(subset), "no incomparable pairs (total order)"};
}

}  // namespace sgps
