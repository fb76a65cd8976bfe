#ifndef NONARCH_PADIC_HPP
#define NONARCH_PADIC_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/rational.hpp"
#include "nonarch/valuation.hpp"

namespace nonarch {

/// Rational p-adic approximation: the canonical representative of c modulo
/// p^k (absolute precision k), written as u * p^v with 0 <= u < p^(k-v).
/// Denominators coprime to p are inverted; a negative valuation is kept.
inline Rational round_padic(const Rational& c, const Prime& p, std::int64_t k) {
  if (c.is_zero()) return Rational(0);
  Integer num = c.num();
  Integer den = c.den();
  const std::int64_t v = remove_factor(num, p) - remove_factor(den, p);
  if (v >= k) return Rational(0);
  const Integer m = p.power(k - v);
  const Integer u = mod(num * inverse_mod(den, m), m);
  if (v >= 0) return Rational(u * p.power(v));
  return Rational(u, p.power(-v));
}

/// Residue of a p-integral rational modulo m = p^k.
inline Integer residue_mod(const Rational& c, const Integer& m) {
  return mod(c.num() * inverse_mod(c.den(), m), m);
}

/// An element of Q_p known to relative precision N: p^v * unit (mod p^(v+N)).
///
/// Zero comes in two flavours. ExactZero is the true zero. ZeroAtPrecision(A)
/// means "congruent to 0 modulo p^A", which is what total cancellation in a
/// subtraction produces; it must not be mistaken for an exact zero.
class PadicNumber {
 public:
  enum class State { ExactZero, ZeroAtPrecision, Nonzero };

  static PadicNumber exact_zero(const Prime& p) { return PadicNumber(p, State::ExactZero, 0, Integer(0), 0); }
  static PadicNumber zero_at_precision(const Prime& p, std::int64_t absolute) {
    return PadicNumber(p, State::ZeroAtPrecision, absolute, Integer(0), 0);
  }

  /// p^v * unit with relative precision N; `unit` need not be reduced but must
  /// be coprime to p.
  static PadicNumber from_unit(const Prime& p, std::int64_t v, const Integer& unit, std::int64_t N) {
    if (N < 1) fail(ErrorCode::PreconditionViolated, "relative precision must be positive");
    if (mpz_divisible_ui_p(unit.get_mpz_t(), p.value()))
      fail(ErrorCode::PreconditionViolated, "unit part divisible by p");
    return PadicNumber(p, State::Nonzero, v, mod(unit, p.power(N)), N);
  }

  static PadicNumber from_rational(const Rational& a, const Prime& p, std::int64_t N) {
    if (N < 1) fail(ErrorCode::PreconditionViolated, "relative precision must be positive");
    if (a.is_zero()) return exact_zero(p);
    Integer num = a.num();
    Integer den = a.den();
    const std::int64_t v = remove_factor(num, p) - remove_factor(den, p);
    const Integer m = p.power(N);
    return PadicNumber(p, State::Nonzero, v, mod(num * inverse_mod(den, m), m), N);
  }

  /// Class of r modulo p^A (absolute precision A >= 1).
  static PadicNumber from_residue(const Integer& r, const Prime& p, std::int64_t A) {
    Integer x = mod(r, p.power(A));
    if (x == 0) return zero_at_precision(p, A);
    const std::int64_t v = remove_factor(x, p);
    return PadicNumber(p, State::Nonzero, v, x, A - v);
  }

  const Prime& prime() const { return p_; }
  State state() const { return state_; }
  bool is_exact_zero() const { return state_ == State::ExactZero; }
  bool is_zero_at_precision() const { return state_ == State::ZeroAtPrecision; }
  bool is_nonzero() const { return state_ == State::Nonzero; }

  /// Valuation of a nonzero element; nullopt for either kind of zero.
  std::optional<std::int64_t> valuation() const {
    if (state_ != State::Nonzero) return std::nullopt;
    return v_;
  }
  /// Known valuation as an ExtRational; exact zero gives +inf. A zero at
  /// precision A only gives the lower bound A.
  ExtRational valuation_lower_bound() const {
    if (state_ == State::ExactZero) return ExtRational::infinity();
    return ExtRational(Rational(static_cast<long>(v_)));
  }
  const Integer& unit() const { return unit_; }
  std::int64_t relative_precision() const { return n_; }
  /// v + N for nonzero values, A for zero at precision, none for exact zero.
  std::optional<std::int64_t> absolute_precision() const {
    switch (state_) {
      case State::ExactZero: return std::nullopt;
      case State::ZeroAtPrecision: return v_;
      case State::Nonzero: return v_ + n_;
    }
    return std::nullopt;
  }

  /// The canonical rational representative p^v * unit (0 for zeros).
  Rational to_rational() const {
    if (state_ != State::Nonzero) return Rational(0);
    if (v_ >= 0) return Rational(unit_ * p_.power(v_));
    return Rational(unit_, p_.power(-v_));
  }

  /// Representative in [0, p^A) of an element of Z_p, A its absolute precision.
  Integer residue() const {
    if (state_ == State::ExactZero) return 0;
    if (v_ < 0) fail(ErrorCode::NegativeValuation, "residue of an element outside Z_p");
    if (state_ == State::ZeroAtPrecision) return 0;
    return unit_ * p_.power(v_);
  }

  /// Base-p digits d_0..d_{k-1} in {0..p-1}.
  std::vector<unsigned long> digits(std::int64_t k) const {
    if (k < 0) fail(ErrorCode::PreconditionViolated, "negative digit count");
    if (state_ == State::Nonzero && v_ < 0) fail(ErrorCode::NegativeValuation, "digits of an element outside Z_p");
    if (auto a = absolute_precision(); a && k > *a)
      fail(ErrorCode::InsufficientPrecision,
           "requested " + std::to_string(k) + " digits but only " + std::to_string(*a) + " are known");
    Integer x = residue();
    std::vector<unsigned long> out;
    out.reserve(static_cast<std::size_t>(k));
    const Integer pp = p_.integer();
    for (std::int64_t i = 0; i < k; ++i) {
      Integer d;
      mpz_fdiv_qr(x.get_mpz_t(), d.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
      out.push_back(d.get_ui());
    }
    return out;
  }

  PadicNumber operator-() const {
    if (state_ != State::Nonzero) return *this;
    return PadicNumber(p_, state_, v_, mod(-unit_, p_.power(n_)), n_);
  }

  friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
    check_prime(x, y);
    if (x.is_exact_zero()) return y;
    if (y.is_exact_zero()) return x;
    const std::int64_t a = std::min(*x.absolute_precision(), *y.absolute_precision());
    if (x.is_zero_at_precision() && y.is_zero_at_precision()) return zero_at_precision(x.p_, a);
    std::int64_t e = a;
    if (x.is_nonzero()) e = std::min(e, x.v_);
    if (y.is_nonzero()) e = std::min(e, y.v_);
    if (e >= a) return zero_at_precision(x.p_, a);
    Integer s = 0;
    if (x.is_nonzero()) s += x.unit_ * x.p_.power(x.v_ - e);
    if (y.is_nonzero()) s += y.unit_ * y.p_.power(y.v_ - e);
    s = mod(s, x.p_.power(a - e));
    if (s == 0) return zero_at_precision(x.p_, a);
    const std::int64_t t = remove_factor(s, x.p_);
    return PadicNumber(x.p_, State::Nonzero, e + t, s, a - e - t);
  }
  friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

  friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
    check_prime(x, y);
    if (x.is_exact_zero() || y.is_exact_zero()) return exact_zero(x.p_);
    if (x.is_zero_at_precision() || y.is_zero_at_precision()) {
      // v_ holds the valuation or the zero's absolute precision; both add.
      return zero_at_precision(x.p_, x.v_ + y.v_);
    }
    const std::int64_t n = std::min(x.n_, y.n_);
    const Integer m = x.p_.power(n);
    return PadicNumber(x.p_, State::Nonzero, x.v_ + y.v_, mod(x.unit_ * y.unit_, m), n);
  }

  friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
    check_prime(x, y);
    if (y.is_exact_zero()) fail(ErrorCode::DivisionByZero, "p-adic division by exact zero");
    if (y.is_zero_at_precision())
      fail(ErrorCode::DivisionByZero, "p-adic division by a value indistinguishable from zero");
    if (x.is_exact_zero()) return x;
    if (x.is_zero_at_precision()) return zero_at_precision(x.p_, x.v_ - y.v_);
    const std::int64_t n = std::min(x.n_, y.n_);
    const Integer m = x.p_.power(n);
    return PadicNumber(x.p_, State::Nonzero, x.v_ - y.v_, mod(x.unit_ * inverse_mod(y.unit_, m), m), n);
  }

  friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
    return a.p_ == b.p_ && a.state_ == b.state_ && a.v_ == b.v_ && a.unit_ == b.unit_ && a.n_ == b.n_;
  }

  /// "57 mod 125" for elements of Z_p, "u * p^v mod p^A" otherwise.
  std::string to_string() const {
    const std::string ps = std::to_string(p_.value());
    switch (state_) {
      case State::ExactZero: return "0";
      case State::ZeroAtPrecision: return "O(" + ps + "^" + std::to_string(v_) + ")";
      case State::Nonzero: break;
    }
    const std::int64_t a = v_ + n_;
    if (v_ >= 0) return residue().get_str() + " mod " + p_.power(a).get_str();
    return unit_.get_str() + " * " + ps + "^" + std::to_string(v_) + " mod " + ps + "^" + std::to_string(a);
  }

 private:
  PadicNumber(const Prime& p, State s, std::int64_t v, Integer unit, std::int64_t n)
      : p_(p), state_(s), v_(v), unit_(std::move(unit)), n_(n) {}

  static void check_prime(const PadicNumber& x, const PadicNumber& y) {
    if (!(x.p_ == y.p_)) fail(ErrorCode::PrimeMismatch, "operands live over different primes");
  }

  Prime p_;
  State state_;
  std::int64_t v_;  ///< valuation, or the absolute precision of a zero at precision
  Integer unit_;
  std::int64_t n_;
};

}  // namespace nonarch

#endif  // NONARCH_PADIC_HPP
