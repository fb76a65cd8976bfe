#ifndef NONARCH_POLYNOMIAL_HPP
#define NONARCH_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/rational.hpp"

namespace nonarch {

/// Dense univariate polynomial over Q, coefficients stored low degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> c) : c_(c) { trim(); }
  explicit Polynomial(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  static Polynomial monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Polynomial(std::move(v));
  }
  static Polynomial constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const {
    if (c_.empty()) fail(ErrorCode::ZeroPolynomial, "leading coefficient of zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == Rational(1); }
  /// Index of the lowest nonzero coefficient.
  std::size_t order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return i;
    fail(ErrorCode::ZeroPolynomial, "order of zero polynomial");
  }

  Rational operator()(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  Polynomial operator-() const {
    auto v = c_;
    for (auto& x : v) x = -x;
    return Polynomial(std::move(v));
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& a) {
    auto v = a.c_;
    for (auto& x : v) x *= s;
    return Polynomial(std::move(v));
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Coefficients of index < n.
  Polynomial truncated(std::size_t n) const {
    if (n >= c_.size()) return *this;
    return Polynomial(std::vector<Rational>(c_.begin(), c_.begin() + static_cast<long>(n)));
  }

  /// p(x) -> p(scale * x).
  Polynomial scaled_argument(const Rational& scale) const {
    auto v = c_;
    Rational f(1);
    for (auto& x : v) {
      x *= f;
      f *= scale;
    }
    return Polynomial(std::move(v));
  }

  std::string to_string(const std::string& var = "T") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rational& c = c_[k];
      if (c.is_zero()) continue;
      const bool neg = c.sign() < 0;
      const Rational a = c.abs();
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      const bool one = a == Rational(1);
      if (k == 0 || !one) {
        out += a.to_string();
        if (k > 0) out += "*";
      }
      if (k >= 1) out += var;
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Euclidean division a = q*b + r with deg r < deg b.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  const long db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lead_inv = b.leading().inverse();
  const bool monic = b.is_monic();
  for (long k = a.degree() - db; k >= 0; --k) {
    const Rational t = monic ? r[static_cast<std::size_t>(k + db)] : r[static_cast<std::size_t>(k + db)] * lead_inv;
    q[static_cast<std::size_t>(k)] = t;
    if (t.is_zero()) continue;
    for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= t * b.coefficients()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.leading().inverse() * a;
}

inline Polynomial pow(const Polynomial& a, unsigned e) {
  Polynomial r = Polynomial::constant(1);
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

}  // namespace nonarch

#endif  // NONARCH_POLYNOMIAL_HPP
