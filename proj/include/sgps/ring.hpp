#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sgps/numeric.hpp"

namespace sgps {

enum class Side { left, right };

inline std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// Three-valued outcome for searches that may run out of universe or budget.
enum class Decision { yes, no, unknown };

inline std::string to_string(Decision d) {
  switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    case Decision::unknown: return "unknown";
  }
  return "unknown";
}

/// A monomial: variable indices (1-based). Commutative algebras keep it sorted.
using Word = std::vector<std::uint16_t>;

/// Degree-lexicographic order on words.
struct DegLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using Poly = std::map<Word, Rational, DegLex>;

class Element;
class Ring;
using RingHandle = std::shared_ptr<const Ring>;

/// Jordan-construction payload: x^-level * rep * x^level.
struct Leveled {
  std::int64_t level = 0;
  std::shared_ptr<const Element> rep;
};

/// Canonical representation, interpreted by the owning ring:
/// residue / field index (int64), integer (BigInt), algebra polynomial, Jordan pair.
using Payload = std::variant<std::int64_t, BigInt, Poly, Leveled>;

bool operator==(const Leveled& a, const Leveled& b);
bool operator<(const Leveled& a, const Leveled& b);

/// Value-semantic ring element. Equality is canonical payload equality.
class Element {
 public:
  Element() = default;
  Element(RingHandle ring, Payload payload) : ring_(std::move(ring)), payload_(std::move(payload)) {}

  const RingHandle& ring() const noexcept { return ring_; }
  const Payload& payload() const noexcept { return payload_; }
  bool valid() const noexcept { return ring_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;
  std::string str() const;
  nlohmann::json to_json() const;

  Element pow(std::uint64_t e) const;

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator-(const Element& a);
  Element& operator+=(const Element& b) { return *this = *this + b; }
  Element& operator-=(const Element& b) { return *this = *this - b; }
  Element& operator*=(const Element& b) { return *this = *this * b; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.ring_ == b.ring_ && a.payload_ == b.payload_;
  }
  friend bool operator<(const Element& a, const Element& b) {
    if (a.ring_ != b.ring_) return std::less<const Ring*>()(a.ring_.get(), b.ring_.get());
    return a.payload_ < b.payload_;
  }

 private:
  RingHandle ring_;
  Payload payload_;
};

inline bool operator==(const Leveled& a, const Leveled& b) {
  return a.level == b.level && *a.rep == *b.rep;
}
inline bool operator<(const Leveled& a, const Leveled& b) {
  if (a.level != b.level) return a.level < b.level;
  return *a.rep < *b.rep;
}

enum class RingKind { integers, modular, galois_field, quotient_algebra, jordan };

inline std::string to_string(RingKind k) {
  switch (k) {
    case RingKind::integers: return "integers";
    case RingKind::modular: return "modular";
    case RingKind::galois_field: return "galois-field";
    case RingKind::quotient_algebra: return "quotient-algebra";
    case RingKind::jordan: return "jordan";
  }
  return "unknown";
}

/// Universes larger than this are not iterated.
inline constexpr std::size_t kEnumerationLimit = std::size_t{1} << 20;

struct StructuralUnit {
  Decision decision = Decision::unknown;
  std::optional<Payload> inverse;
};

/// Coefficient ring with identity. Concrete rings override the payload-level
/// primitives; the element-level API wraps them.
class Ring : public std::enable_shared_from_this<Ring> {
 public:
  virtual ~Ring() = default;

  virtual RingKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual bool enumerable() const = 0;
  virtual BigInt characteristic() const = 0;

  virtual Payload zero_payload() const = 0;
  virtual Payload one_payload() const = 0;
  virtual Payload add(const Payload& a, const Payload& b) const = 0;
  virtual Payload neg(const Payload& a) const = 0;
  virtual Payload mul(const Payload& a, const Payload& b) const = 0;
  virtual Payload from_integer(const BigInt& n) const = 0;
  virtual Payload random_payload(Rng& rng) const = 0;
  virtual std::string format(const Payload& a) const = 0;
  virtual nlohmann::json to_json(const Payload& a) const = 0;

  /// Every element exactly once, zero and one included. Throws NotEnumerable.
  virtual std::vector<Payload> universe_payloads() const {
    throw Error(ErrorCode::NotEnumerable, name() + " has no finite universe");
  }

  /// Unit test that does not need enumeration (unknown when none applies).
  virtual StructuralUnit structural_unit(const Payload&) const { return {}; }

  /// All x with a*x = b (side right) or x*a = b (side left); nullopt when
  /// the solution set cannot be computed.
  virtual std::optional<std::vector<Payload>> solve_mul(const Payload& a, const Payload& b,
                                                        Side side) const {
    if (!enumerable()) return std::nullopt;
    std::vector<Payload> out;
    for (const auto& x : universe_payloads())
      if ((side == Side::right ? mul(a, x) : mul(x, a)) == b) out.push_back(x);
    return out;
  }

  // Element-level API.
  RingHandle handle() const { return shared_from_this(); }
  Element zero() const { return Element(handle(), zero_payload()); }
  Element one() const { return Element(handle(), one_payload()); }
  Element integer(const BigInt& n) const { return Element(handle(), from_integer(n)); }
  Element wrap(Payload p) const { return Element(handle(), std::move(p)); }
  Element random(Rng& rng) const { return Element(handle(), random_payload(rng)); }

  std::vector<Element> universe() const {
    std::vector<Element> out;
    for (auto& p : universe_payloads()) out.emplace_back(handle(), std::move(p));
    return out;
  }
};

inline void require_same_ring(const Element& a, const Element& b) {
  if (!a.valid() || !b.valid() || a.ring() != b.ring())
    throw Error(ErrorCode::MixedRings,
                "operands belong to different rings (" + (a.valid() ? a.ring()->name() : "?") +
                    " vs " + (b.valid() ? b.ring()->name() : "?") + ")");
}

inline Element operator+(const Element& a, const Element& b) {
  require_same_ring(a, b);
  return Element(a.ring_, a.ring_->add(a.payload_, b.payload_));
}
inline Element operator-(const Element& a) { return Element(a.ring_, a.ring_->neg(a.payload_)); }
inline Element operator-(const Element& a, const Element& b) {
  require_same_ring(a, b);
  return Element(a.ring_, a.ring_->add(a.payload_, a.ring_->neg(b.payload_)));
}
inline Element operator*(const Element& a, const Element& b) {
  require_same_ring(a, b);
  return Element(a.ring_, a.ring_->mul(a.payload_, b.payload_));
}

inline bool Element::is_zero() const { return payload_ == ring_->zero_payload(); }
inline bool Element::is_one() const { return payload_ == ring_->one_payload(); }
inline std::string Element::str() const { return ring_ ? ring_->format(payload_) : "<null>"; }
inline nlohmann::json Element::to_json() const { return ring_ ? ring_->to_json(payload_) : nlohmann::json(); }

inline Element Element::pow(std::uint64_t e) const {
  Element result = ring_->one();
  Element base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

class Endomorphism;
using EndoHandle = std::shared_ptr<const Endomorphism>;

/// Ring endomorphism R -> R. apply(1) = 1 is assumed by construction and
/// checked by validate_endomorphism.
class Endomorphism : public std::enable_shared_from_this<Endomorphism> {
 public:
  explicit Endomorphism(RingHandle domain) : domain_(std::move(domain)) {}
  virtual ~Endomorphism() = default;

  const RingHandle& domain() const noexcept { return domain_; }

  virtual Element apply(const Element& a) const = 0;
  virtual std::string describe() const = 0;
  virtual bool is_identity() const { return false; }
  /// Variables whose images were cut off by a truncation policy.
  virtual std::vector<std::string> escaped() const { return {}; }

  /// alpha^n for n >= 0.
  virtual EndoHandle power(std::int64_t n) const;
  /// Two-sided inverse when one exists and can be computed.
  virtual std::optional<EndoHandle> inverse() const;

  EndoHandle handle() const { return shared_from_this(); }

  Element operator()(const Element& a) const {
    if (a.ring() != domain_)
      throw Error(ErrorCode::MixedRings, "endomorphism of " + domain_->name() + " applied to element of " +
                                             (a.valid() ? a.ring()->name() : "?"));
    return apply(a);
  }

 private:
  RingHandle domain_;
};

class IdentityEndo final : public Endomorphism {
 public:
  using Endomorphism::Endomorphism;
  Element apply(const Element& a) const override { return a; }
  std::string describe() const override { return "id"; }
  bool is_identity() const override { return true; }
  EndoHandle power(std::int64_t) const override { return handle(); }
  std::optional<EndoHandle> inverse() const override { return handle(); }
};

inline EndoHandle identity_endo(const RingHandle& r) { return std::make_shared<IdentityEndo>(r); }

/// Explicit lookup table on an enumerable ring.
class TableEndo final : public Endomorphism {
 public:
  TableEndo(RingHandle domain, std::map<Payload, Payload> table, std::string label)
      : Endomorphism(std::move(domain)), table_(std::move(table)), label_(std::move(label)) {}

  Element apply(const Element& a) const override {
    auto it = table_.find(a.payload());
    if (it == table_.end())
      throw Error(ErrorCode::InvalidArgument, "table endomorphism '" + label_ + "' undefined at " + a.str());
    return domain()->wrap(it->second);
  }
  std::string describe() const override { return label_; }
  const std::map<Payload, Payload>& table() const noexcept { return table_; }

 private:
  std::map<Payload, Payload> table_;
  std::string label_;
};

/// first after second: x -> first(second(x)).
class ComposedEndo final : public Endomorphism {
 public:
  ComposedEndo(EndoHandle first, EndoHandle second)
      : Endomorphism(first->domain()), first_(std::move(first)), second_(std::move(second)) {}
  Element apply(const Element& a) const override { return first_->apply(second_->apply(a)); }
  std::string describe() const override { return "(" + first_->describe() + ")o(" + second_->describe() + ")"; }
  std::vector<std::string> escaped() const override {
    auto e = first_->escaped();
    auto f = second_->escaped();
    e.insert(e.end(), f.begin(), f.end());
    return e;
  }

 private:
  EndoHandle first_;
  EndoHandle second_;
};

class PowerEndo final : public Endomorphism {
 public:
  PowerEndo(EndoHandle base, std::int64_t n) : Endomorphism(base->domain()), base_(std::move(base)), n_(n) {}
  Element apply(const Element& a) const override {
    Element x = a;
    for (std::int64_t i = 0; i < n_; ++i) x = base_->apply(x);
    return x;
  }
  std::string describe() const override { return "(" + base_->describe() + ")^" + std::to_string(n_); }
  EndoHandle power(std::int64_t m) const override { return base_->power(n_ * m); }
  std::vector<std::string> escaped() const override { return base_->escaped(); }

 private:
  EndoHandle base_;
  std::int64_t n_;
};

inline EndoHandle compose(const EndoHandle& first, const EndoHandle& second) {
  if (first->domain() != second->domain())
    throw Error(ErrorCode::MixedRings, "composing endomorphisms of different rings");
  if (first->is_identity()) return second;
  if (second->is_identity()) return first;
  return std::make_shared<ComposedEndo>(first, second);
}

inline EndoHandle Endomorphism::power(std::int64_t n) const {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative power of an endomorphism; use inverse()");
  if (n == 0) return identity_endo(domain_);
  if (n == 1) return handle();
  return std::make_shared<PowerEndo>(handle(), n);
}

inline std::optional<EndoHandle> Endomorphism::inverse() const {
  if (!domain_->enumerable()) return std::nullopt;
  std::map<Payload, Payload> inv;
  for (const auto& x : domain_->universe()) {
    auto y = apply(x);
    if (!inv.emplace(y.payload(), x.payload()).second) return std::nullopt;  // not injective
  }
  if (inv.size() != domain_->universe_payloads().size()) return std::nullopt;
  return std::make_shared<TableEndo>(domain_, std::move(inv), "(" + describe() + ")^-1");
}

/// alpha^n for any integer n; negative powers go through alpha's inverse.
inline EndoHandle signed_power(const EndoHandle& alpha, std::int64_t n) {
  if (n >= 0) return alpha->power(n);
  auto inv = alpha->inverse();
  if (!inv) throw Error(ErrorCode::NotInvertibleTwist, alpha->describe() + " has no two-sided inverse on " +
                                                           alpha->domain()->name());
  return (*inv)->power(-n);
}

}  // namespace sgps
