#ifndef NONARCH_MULTIPOLY_HPP
#define NONARCH_MULTIPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/rational.hpp"

namespace nonarch {

using Exponent = std::vector<unsigned>;

/// Sparse polynomial in n indeterminates over Q. Zero coefficients are never stored.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t nvars = 0) : n_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c) {
    MultiPoly r(nvars);
    r.add_term(Exponent(nvars, 0), c);
    return r;
  }
  static MultiPoly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) fail(ErrorCode::PreconditionViolated, "variable index out of range");
    Exponent e(nvars, 0);
    e[i] = 1;
    MultiPoly r(nvars);
    r.add_term(e, 1);
    return r;
  }

  std::size_t nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != n_) fail(ErrorCode::PreconditionViolated, "exponent length does not match variable count");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  std::set<Exponent> support() const {
    std::set<Exponent> s;
    for (const auto& [e, c] : terms_) s.insert(e);
    return s;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned s = 0;
      for (unsigned x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  Rational eval(const std::vector<Rational>& x) const {
    if (x.size() != n_) fail(ErrorCode::PreconditionViolated, "point dimension does not match variable count");
    Rational acc;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < n_; ++i)
        if (e[i]) t *= pow(x[i], static_cast<long>(e[i]));
      acc += t;
    }
    return acc;
  }

  MultiPoly partial(std::size_t i) const {
    MultiPoly r(n_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent f = e;
      --f[i];
      r.add_term(f, c * Rational(static_cast<long>(e[i])));
    }
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r(a.n_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b);
    MultiPoly r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(const Rational& s, const MultiPoly& a) {
    MultiPoly r(a.n_);
    for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
    return r;
  }
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool neg = c.sign() < 0;
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      const Rational a = c.abs();
      bool constant = true;
      for (unsigned x : e) constant = constant && x == 0;
      std::string mono;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (constant)
        out += a.to_string();
      else if (a == Rational(1))
        out += mono;
      else
        out += a.to_string() + "*" + mono;
    }
    return out;
  }

 private:
  static void check_same(const MultiPoly& a, const MultiPoly& b) {
    if (a.n_ != b.n_) fail(ErrorCode::PreconditionViolated, "variable count mismatch");
  }
  std::size_t n_;
  std::map<Exponent, Rational> terms_;
};

}  // namespace nonarch

#endif  // NONARCH_MULTIPOLY_HPP
