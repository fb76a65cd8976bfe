#ifndef NONARCH_RESIDUE_HPP
#define NONARCH_RESIDUE_HPP

#include <cstdint>
#include <string>

#include "nonarch/error.hpp"
#include "nonarch/rational.hpp"
#include "nonarch/valuation.hpp"

namespace nonarch {

/// Element of Z/p^kZ, stored as its representative in [0, p^k).
class Residue {
 public:
  Residue(const Integer& x, const Prime& p, std::int64_t k) : p_(p), k_(k), m_(p.power(k)), x_(mod(x, m_)) {
    if (k < 1) fail(ErrorCode::PreconditionViolated, "residue ring Z/p^k needs k >= 1");
  }
  /// Image of a p-integral rational.
  static Residue from_rational(const Rational& a, const Prime& p, std::int64_t k) {
    const Integer m = p.power(k);
    if (mpz_divisible_ui_p(a.den().get_mpz_t(), p.value()))
      fail(ErrorCode::NotIntegral, a.to_string() + " is not p-integral");
    return Residue(a.num() * inverse_mod(a.den(), m), p, k);
  }

  const Integer& value() const { return x_; }
  const Integer& modulus() const { return m_; }
  const Prime& prime() const { return p_; }
  std::int64_t exponent() const { return k_; }
  bool is_zero() const { return x_ == 0; }

  /// Valuation of the representative, capped at k for zero.
  std::int64_t valuation() const {
    if (x_ == 0) return k_;
    Integer t = x_;
    return remove_factor(t, p_);
  }

  Residue zero() const { return Residue(Integer(0), p_, k_); }

  friend Residue operator+(const Residue& a, const Residue& b) { return Residue(a.x_ + b.x_, check(a, b), a.k_); }
  friend Residue operator-(const Residue& a, const Residue& b) { return Residue(a.x_ - b.x_, check(a, b), a.k_); }
  friend Residue operator*(const Residue& a, const Residue& b) { return Residue(a.x_ * b.x_, check(a, b), a.k_); }
  Residue operator-() const { return Residue(-x_, p_, k_); }
  friend bool operator==(const Residue& a, const Residue& b) { return a.k_ == b.k_ && a.p_ == b.p_ && a.x_ == b.x_; }

  std::string to_string() const { return x_.get_str() + " mod " + m_.get_str(); }

 private:
  static const Prime& check(const Residue& a, const Residue& b) {
    if (!(a.p_ == b.p_) || a.k_ != b.k_) fail(ErrorCode::PrimeMismatch, "residues modulo different p^k");
    return a.p_;
  }
  Prime p_;
  std::int64_t k_;
  Integer m_;
  Integer x_;
};

}  // namespace nonarch

#endif  // NONARCH_RESIDUE_HPP
