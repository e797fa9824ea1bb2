#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <string>

#include "sgps/error.hpp"

namespace sgps {

// Expression templates off: values behave like plain arithmetic types.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;
using Rng = std::mt19937_64;

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline std::string to_string(const BigInt& n) { return n.str(); }

/// Exact rendering: "p" for integers, "p/q" otherwise (lowest terms, q > 0).
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rational(num, den);
  } catch (const std::exception& e) {
    if (dynamic_cast<const Error*>(&e) != nullptr) throw;
    throw Error(ErrorCode::InvalidArgument, "not a rational literal: '" + text + "'");
  }
}

inline std::int64_t to_int64(const BigInt& n) {
  if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN))
    throw Error(ErrorCode::InvalidArgument, "integer out of 64-bit range: " + n.str());
  return static_cast<std::int64_t>(n);
}

inline std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw Error(ErrorCode::InvalidArgument, "not an integer: " + to_string(q));
  return to_int64(numerator(q));
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  auto r = a % n;
  return r < 0 ? r + n : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % n);
}

/// Extended Euclid; returns g = gcd(a, n) and x with a*x = g (mod n).
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t n, std::int64_t& x) {
  std::int64_t old_r = a, r = n, old_s = 1, s = 0;
  while (r != 0) {
    auto q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  x = old_s;
  return old_r;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline BigInt ipow(const BigInt& base, unsigned e) { return boost::multiprecision::pow(base, e); }

/// Coefficient field of a quotient algebra: the rationals (p == 0) or F_p.
/// Elements of F_p are kept as integer Rationals in [0, p).
class CoefficientField {
 public:
  CoefficientField() = default;
  explicit CoefficientField(std::int64_t p) : p_(p) {
    if (p != 0 && !is_prime(p))
      throw Error(ErrorCode::BadField, "coefficient field characteristic must be 0 or prime, got " +
                                           std::to_string(p));
  }

  static CoefficientField rationals() { return CoefficientField(0); }

  std::int64_t characteristic() const noexcept { return p_; }
  bool finite() const noexcept { return p_ != 0; }
  std::string name() const { return p_ == 0 ? "Q" : "GF(" + std::to_string(p_) + ")"; }

  Rational normalize(const Rational& q) const {
    if (p_ == 0) return q;
    BigInt num = numerator(q) % p_;
    BigInt den = denominator(q) % p_;
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "denominator divisible by field characteristic");
    std::int64_t n = mod_floor(static_cast<std::int64_t>(num), p_);
    std::int64_t d = mod_floor(static_cast<std::int64_t>(den), p_);
    std::int64_t dinv = 0;
    ext_gcd(d, p_, dinv);
    return Rational(mul_mod(n, mod_floor(dinv, p_), p_));
  }

  Rational add(const Rational& a, const Rational& b) const { return p_ == 0 ? a + b : normalize(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return p_ == 0 ? a - b : normalize(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return p_ == 0 ? a * b : normalize(a * b); }
  Rational neg(const Rational& a) const { return p_ == 0 ? Rational(-a) : normalize(-a); }

  Rational inv(const Rational& a) const {
    if (a == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero coefficient");
    if (p_ == 0) return 1 / a;
    return normalize(Rational(BigInt(1), numerator(a)));
  }

  /// Small nonzero sample coefficient.
  Rational random_nonzero(Rng& rng) const {
    std::uniform_int_distribution<int> dist(-3, 3);
    for (;;) {
      Rational c = normalize(Rational(dist(rng)));
      if (c != 0) return c;
    }
  }

  bool operator==(const CoefficientField&) const = default;

 private:
  std::int64_t p_ = 0;
};

}  // namespace sgps
