#pragma once

#include <numeric>
#include <sstream>

#include "sgps/ring.hpp"

namespace sgps {

/// The integers. Not enumerable; units are +-1.
class IntegerRing final : public Ring {
 public:
  RingKind kind() const override { return RingKind::integers; }
  std::string name() const override { return "Z"; }
  bool enumerable() const override { return false; }
  BigInt characteristic() const override { return 0; }

  Payload zero_payload() const override { return BigInt(0); }
  Payload one_payload() const override { return BigInt(1); }
  Payload add(const Payload& a, const Payload& b) const override { return BigInt(v(a) + v(b)); }
  Payload neg(const Payload& a) const override { return BigInt(-v(a)); }
  Payload mul(const Payload& a, const Payload& b) const override { return BigInt(v(a) * v(b)); }
  Payload from_integer(const BigInt& n) const override { return n; }
  Payload random_payload(Rng& rng) const override {
    return BigInt(std::uniform_int_distribution<int>(-50, 50)(rng));
  }
  std::string format(const Payload& a) const override { return v(a).str(); }
  nlohmann::json to_json(const Payload& a) const override { return v(a).str(); }

  StructuralUnit structural_unit(const Payload& a) const override {
    if (v(a) == 1 || v(a) == -1) return {Decision::yes, a};
    return {Decision::no, std::nullopt};
  }

  std::optional<std::vector<Payload>> solve_mul(const Payload& a, const Payload& b, Side) const override {
    if (v(a) == 0) {
      if (v(b) == 0) return std::nullopt;  // every integer
      return std::vector<Payload>{};
    }
    if (v(b) % v(a) != 0) return std::vector<Payload>{};
    return std::vector<Payload>{BigInt(v(b) / v(a))};
  }

 private:
  static const BigInt& v(const Payload& p) { return std::get<BigInt>(p); }
};

/// Z/nZ with residues in [0, n).
class ZmodRing final : public Ring {
 public:
  explicit ZmodRing(std::int64_t n) : n_(n) {
    if (n < 2) throw Error(ErrorCode::BadModulus, "Zmod(" + std::to_string(n) + "): modulus must be >= 2");
  }

  std::int64_t modulus() const noexcept { return n_; }

  RingKind kind() const override { return RingKind::modular; }
  std::string name() const override { return "Zmod(" + std::to_string(n_) + ")"; }
  bool enumerable() const override { return static_cast<std::uint64_t>(n_) <= kEnumerationLimit; }
  BigInt characteristic() const override { return n_; }

  Payload zero_payload() const override { return std::int64_t{0}; }
  Payload one_payload() const override { return std::int64_t{1}; }
  Payload add(const Payload& a, const Payload& b) const override {
    auto s = static_cast<__int128>(v(a)) + v(b);
    return static_cast<std::int64_t>(s % n_);
  }
  Payload neg(const Payload& a) const override { return v(a) == 0 ? std::int64_t{0} : n_ - v(a); }
  Payload mul(const Payload& a, const Payload& b) const override { return mul_mod(v(a), v(b), n_); }
  Payload from_integer(const BigInt& n) const override {
    BigInt r = n % n_;
    if (r < 0) r += n_;
    return static_cast<std::int64_t>(r);
  }
  Payload random_payload(Rng& rng) const override {
    return std::uniform_int_distribution<std::int64_t>(0, n_ - 1)(rng);
  }
  std::string format(const Payload& a) const override { return std::to_string(v(a)); }
  nlohmann::json to_json(const Payload& a) const override { return v(a); }

  std::vector<Payload> universe_payloads() const override {
    if (!enumerable()) return Ring::universe_payloads();
    std::vector<Payload> out;
    out.reserve(static_cast<std::size_t>(n_));
    for (std::int64_t i = 0; i < n_; ++i) out.emplace_back(i);
    return out;
  }

  StructuralUnit structural_unit(const Payload& a) const override {
    std::int64_t x = 0;
    if (ext_gcd(v(a), n_, x) != 1) return {Decision::no, std::nullopt};
    return {Decision::yes, Payload(mod_floor(x, n_))};
  }

  // a*x = b (mod n): solvable iff gcd(a, n) | b; then gcd(a, n) residues.
  std::optional<std::vector<Payload>> solve_mul(const Payload& a, const Payload& b, Side) const override {
    std::int64_t inv = 0;
    std::int64_t g = ext_gcd(v(a), n_, inv);
    if (v(a) == 0) g = n_;
    if (v(b) % g != 0) return std::vector<Payload>{};
    if (static_cast<std::uint64_t>(g) > kEnumerationLimit) return std::nullopt;
    std::int64_t step = n_ / g;
    std::int64_t x0 = 0;
    if (v(a) != 0) {
      std::int64_t a_red = v(a) / g, b_red = v(b) / g, ia = 0;
      ext_gcd(mod_floor(a_red, step), step, ia);
      x0 = step == 1 ? 0 : mul_mod(mod_floor(b_red, step), mod_floor(ia, step), step);
    }
    std::vector<Payload> out;
    for (std::int64_t k = 0; k < g; ++k) out.emplace_back(x0 + k * step);
    return out;
  }

 private:
  static std::int64_t v(const Payload& p) { return std::get<std::int64_t>(p); }
  std::int64_t n_;
};

/// GF(p^k) as F_p[w]/(m(w)) with m the first monic irreducible of degree k
/// in coefficient order. Elements are packed as sum c_i p^i.
class GaloisFieldRing final : public Ring {
 public:
  GaloisFieldRing(std::int64_t p, int k) : p_(p), k_(k) {
    if (!is_prime(p)) throw Error(ErrorCode::BadField, "GF(" + std::to_string(p) + ",...): p must be prime");
    if (k < 1) throw Error(ErrorCode::BadField, "GF: extension degree must be >= 1");
    q_ = 1;
    for (int i = 0; i < k; ++i) {
      q_ *= p;
      if (q_ > (1 << 16)) throw Error(ErrorCode::BadField, "GF: field order above 65536 not supported");
    }
    modulus_ = find_irreducible();
    if (q_ <= 256) {
      mul_table_.resize(static_cast<std::size_t>(q_ * q_));
      for (std::int64_t a = 0; a < q_; ++a)
        for (std::int64_t b = 0; b < q_; ++b) mul_table_[static_cast<std::size_t>(a * q_ + b)] = slow_mul(a, b);
    }
  }

  std::int64_t p() const noexcept { return p_; }
  int degree() const noexcept { return k_; }
  std::int64_t order() const noexcept { return q_; }
  /// Coefficients c_0..c_k of the defining polynomial (c_k = 1).
  const std::vector<std::int64_t>& modulus() const noexcept { return modulus_; }
  /// The class of w.
  Element generator() const { return wrap(k_ == 1 ? std::int64_t{0} : p_); }

  RingKind kind() const override { return RingKind::galois_field; }
  std::string name() const override {
    return "GF(" + std::to_string(p_) + (k_ == 1 ? "" : "," + std::to_string(k_)) + ")";
  }
  bool enumerable() const override { return true; }
  BigInt characteristic() const override { return p_; }

  Payload zero_payload() const override { return std::int64_t{0}; }
  Payload one_payload() const override { return std::int64_t{1}; }
  Payload add(const Payload& a, const Payload& b) const override {
    auto x = decode(v(a)), y = decode(v(b));
    for (int i = 0; i < k_; ++i) x[i] = (x[i] + y[i]) % p_;
    return encode(x);
  }
  Payload neg(const Payload& a) const override {
    auto x = decode(v(a));
    for (auto& c : x) c = (p_ - c) % p_;
    return encode(x);
  }
  Payload mul(const Payload& a, const Payload& b) const override {
    if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(v(a) * q_ + v(b))];
    return slow_mul(v(a), v(b));
  }
  Payload from_integer(const BigInt& n) const override {
    BigInt r = n % p_;
    if (r < 0) r += p_;
    return static_cast<std::int64_t>(r);
  }
  Payload random_payload(Rng& rng) const override {
    return std::uniform_int_distribution<std::int64_t>(0, q_ - 1)(rng);
  }

  std::string format(const Payload& a) const override {
    auto c = decode(v(a));
    std::ostringstream os;
    bool first = true;
    for (int i = k_ - 1; i >= 0; --i) {
      if (c[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0) {
        os << c[i];
        continue;
      }
      if (c[i] != 1) os << c[i] << "*";
      os << "w";
      if (i > 1) os << "^" << i;
    }
    return first ? "0" : os.str();
  }
  /// Coefficient vector, constant term first.
  nlohmann::json to_json(const Payload& a) const override { return decode(v(a)); }

  std::vector<Payload> universe_payloads() const override {
    std::vector<Payload> out;
    for (std::int64_t i = 0; i < q_; ++i) out.emplace_back(i);
    return out;
  }

  StructuralUnit structural_unit(const Payload& a) const override {
    if (v(a) == 0) return {Decision::no, std::nullopt};
    // a^(q-2)
    Payload r = one_payload(), base = a;
    for (std::int64_t e = q_ - 2; e > 0; e >>= 1) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
    }
    return {Decision::yes, r};
  }

  std::optional<std::vector<Payload>> solve_mul(const Payload& a, const Payload& b, Side) const override {
    if (v(a) == 0) {
      if (v(b) == 0) return universe_payloads();
      return std::vector<Payload>{};
    }
    return std::vector<Payload>{mul(*structural_unit(a).inverse, b)};
  }

  std::vector<std::int64_t> decode(std::int64_t x) const {
    std::vector<std::int64_t> c(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) {
      c[i] = x % p_;
      x /= p_;
    }
    return c;
  }
  std::int64_t encode(const std::vector<std::int64_t>& c) const {
    std::int64_t x = 0;
    for (int i = k_ - 1; i >= 0; --i) x = x * p_ + c[i];
    return x;
  }

 private:
  static std::int64_t v(const Payload& a) { return std::get<std::int64_t>(a); }

  std::int64_t slow_mul(std::int64_t a, std::int64_t b) const {
    auto x = decode(a), y = decode(b);
    std::vector<std::int64_t> prod(static_cast<std::size_t>(2 * k_ - 1), 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    reduce(prod);
    prod.resize(static_cast<std::size_t>(k_));
    return encode(prod);
  }

  void reduce(std::vector<std::int64_t>& poly) const {
    for (int d = static_cast<int>(poly.size()) - 1; d >= k_; --d) {
      auto c = poly[d];
      if (c == 0) continue;
      for (int i = 0; i <= k_; ++i)
        poly[d - k_ + i] = mod_floor(poly[d - k_ + i] - c * modulus_[i], p_);
    }
  }

  // Monic polynomials of degree d with lower coefficients packed like elements.
  std::vector<std::int64_t> monic(int d, std::int64_t lower) const {
    std::vector<std::int64_t> c(static_cast<std::size_t>(d + 1));
    for (int i = 0; i < d; ++i) {
      c[i] = lower % p_;
      lower /= p_;
    }
    c[d] = 1;
    return c;
  }

  static bool divides(const std::vector<std::int64_t>& f, std::vector<std::int64_t> g, std::int64_t p) {
    int df = static_cast<int>(f.size()) - 1;
    for (int d = static_cast<int>(g.size()) - 1; d >= df; --d) {
      auto c = g[d];
      if (c == 0) continue;
      for (int i = 0; i <= df; ++i) g[d - df + i] = mod_floor(g[d - df + i] - c * f[i], p);
    }
    for (int i = 0; i < df; ++i)
      if (g[i] != 0) return false;
    return true;
  }

  std::vector<std::int64_t> find_irreducible() const {
    if (k_ == 1) return {0, 1};
    for (std::int64_t lower = 0; lower < q_; ++lower) {
      auto cand = monic(k_, lower);
      bool irreducible = true;
      for (int d = 1; d <= k_ / 2 && irreducible; ++d) {
        std::int64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p_;
        for (std::int64_t l = 0; l < count && irreducible; ++l)
          if (divides(monic(d, l), cand, p_)) irreducible = false;
      }
      if (irreducible) return cand;
    }
    throw Error(ErrorCode::BadField, "no irreducible polynomial found");
  }

  std::int64_t p_;
  int k_;
  std::int64_t q_ = 1;
  std::vector<std::int64_t> modulus_;
  std::vector<std::int64_t> mul_table_;
};

inline RingHandle make_integers() { return std::make_shared<IntegerRing>(); }
inline RingHandle make_zmod(std::int64_t n) { return std::make_shared<ZmodRing>(n); }
inline RingHandle make_gf(std::int64_t p, int k = 1) { return std::make_shared<GaloisFieldRing>(p, k); }

/// x -> x^(p^e) on GF(p^k) (and on Zmod(p), where it is the identity map).
class FrobeniusEndo final : public Endomorphism {
 public:
  FrobeniusEndo(RingHandle domain, std::int64_t exponent) : Endomorphism(std::move(domain)) {
    auto* gf = dynamic_cast<const GaloisFieldRing*>(this->domain().get());
    auto* zm = dynamic_cast<const ZmodRing*>(this->domain().get());
    if (gf != nullptr) {
      p_ = gf->p();
      period_ = gf->degree();
    } else if (zm != nullptr && is_prime(zm->modulus())) {
      p_ = zm->modulus();
      period_ = 1;
    } else {
      throw Error(ErrorCode::InvalidArgument, "frobenius needs a finite field, got " + this->domain()->name());
    }
    e_ = mod_floor(exponent, period_);
  }

  Element apply(const Element& a) const override {
    Element x = a;
    for (std::int64_t i = 0; i < e_; ++i) x = x.pow(static_cast<std::uint64_t>(p_));
    return x;
  }
  std::string describe() const override { return e_ == 1 ? "frobenius" : "frobenius^" + std::to_string(e_); }
  bool is_identity() const override { return e_ == 0; }
  EndoHandle power(std::int64_t n) const override {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative power of an endomorphism; use inverse()");
    return std::make_shared<FrobeniusEndo>(domain(), e_ * n);
  }
  std::optional<EndoHandle> inverse() const override {
    return std::make_shared<FrobeniusEndo>(domain(), period_ - e_);
  }

 private:
  std::int64_t p_ = 2;
  std::int64_t period_ = 1;
  std::int64_t e_ = 1;
};

inline EndoHandle make_frobenius(const RingHandle& r, std::int64_t exponent = 1) {
  return std::make_shared<FrobeniusEndo>(r, exponent);
}

}  // namespace sgps
