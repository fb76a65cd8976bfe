#ifndef NONARCH_RATIONAL_HPP
#define NONARCH_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "nonarch/error.hpp"

namespace nonarch {

using Integer = mpz_class;

/// Arbitrary precision rational number, always in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class that never exposes the
/// expression templates (so `auto` is safe) and reports division by zero as an
/// Error instead of a signal.
class Rational {
 public:
  Rational() = default;
  Rational(int n) : q_(n) {}
  Rational(long n) : q_(n) {}
  Rational(long long n) : q_(Integer(std::to_string(n))) {}
  Rational(unsigned long n) : q_(n) {}
  Rational(const Integer& n) : q_(n) {}
  /// Accepts unevaluated integer expressions such as `a * b`.
  template <class U>
  Rational(const __gmp_expr<mpz_t, U>& e) : q_(Integer(e)) {}
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "a", "-a", "a/b" with decimal integers. Anything else (floats,
  /// exponents, whitespace inside the literal) is a ParseError.
  static Rational parse(std::string_view text) {
    auto bad = [&] { fail(ErrorCode::ParseError, "not an exact rational literal: '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    auto valid_int = [](std::string_view s, bool allow_sign) {
      if (s.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) return false;
      for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
      return true;
    };
    auto strip_plus = [](std::string_view s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      if (!valid_int(text, true)) bad();
      return Rational(Integer(std::string(strip_plus(text))));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) bad();
    return Rational(Integer(std::string(strip_plus(num))), Integer(std::string(den)));
  }

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    return Rational(mpq_class(1 / q_));
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Largest integer <= this.
  Integer floor() const {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }
  Integer ceil() const {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  std::string to_string() const { return q_.get_str(); }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class q_;
};

inline Integer pow_integer(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow(const Rational& base, long e) {
  if (e < 0) return pow(base.inverse(), -e);
  return Rational(pow_integer(base.num(), static_cast<unsigned long>(e)),
                  pow_integer(base.den(), static_cast<unsigned long>(e)));
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Non-negative remainder of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Inverse of a modulo m; a must be a unit.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(ErrorCode::DivisionByZero, "not invertible modulo " + m.get_str());
  return r;
}

inline Integer pow_mod(const Integer& base, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Element of Q ∪ {+∞}: the additive mirror of an absolute value.
class ExtRational {
 public:
  ExtRational() : infinite_(true) {}
  ExtRational(const Rational& v) : infinite_(false), value_(v) {}
  ExtRational(long v) : infinite_(false), value_(v) {}
  ExtRational(int v) : infinite_(false), value_(v) {}

  static ExtRational infinity() { return ExtRational(); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  const Rational& value() const {
    if (infinite_) fail(ErrorCode::PreconditionViolated, "value() of +inf");
    return value_;
  }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtRational(a.value_ + b.value_);
  }
  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const { return infinite_ ? "+inf" : value_.to_string(); }
  friend std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.to_string(); }

 private:
  bool infinite_;
  Rational value_;
};

inline ExtRational min(const ExtRational& a, const ExtRational& b) { return (b < a) ? b : a; }

}  // namespace nonarch

#endif  // NONARCH_RATIONAL_HPP
