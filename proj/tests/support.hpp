#ifndef NONARCH_TESTS_SUPPORT_HPP
#define NONARCH_TESTS_SUPPORT_HPP

// Hand-rolled generators and brute-force oracles shared by the unit,
// property and acceptance suites. Nothing here calls the code under test
// except where a name says so.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "nonarch/nonarch.hpp"

namespace testsupport {

using nonarch::Integer;
using nonarch::MultiPoly;
using nonarch::Polynomial;
using nonarch::Prime;
using nonarch::Rational;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return range(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

  std::uint64_t small_prime() { return pick(std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13}); }

  Integer integer(std::int64_t bound) { return Integer(static_cast<long>(range(-bound, bound))); }
  Integer nonzero_integer(std::int64_t bound) {
    for (;;) {
      const std::int64_t x = range(-bound, bound);
      if (x != 0) return Integer(static_cast<long>(x));
    }
  }
  Rational rational(std::int64_t bound) {
    return Rational(integer(bound), Integer(static_cast<long>(range(1, bound))));
  }
  Rational nonzero_rational(std::int64_t bound) {
    return Rational(nonzero_integer(bound), Integer(static_cast<long>(range(1, bound))));
  }
  /// Unit times p^e with e in [emin, emax].
  Rational p_scaled(const Prime& p, std::int64_t emin, std::int64_t emax, std::int64_t unit_bound) {
    Integer u;
    do u = nonzero_integer(unit_bound);
    while (mpz_divisible_ui_p(u.get_mpz_t(), p.value()));
    const std::int64_t e = range(emin, emax);
    return e >= 0 ? Rational(Integer(u * p.power(e))) : Rational(u, p.power(-e));
  }

  Polynomial poly(std::size_t max_degree, std::int64_t bound, bool nonzero = true) {
    for (;;) {
      const std::size_t d = static_cast<std::size_t>(range(0, static_cast<std::int64_t>(max_degree)));
      std::vector<Rational> c(d + 1);
      for (auto& x : c) x = coin() ? rational(bound) : Rational(integer(bound));
      Polynomial f(std::move(c));
      if (!nonzero || !f.is_zero()) return f;
    }
  }

  /// Random bivariate polynomial with at most `terms` monomials of degree
  /// at most `deg` in each variable.
  MultiPoly bivariate(unsigned deg, std::size_t terms, std::int64_t bound) {
    for (;;) {
      MultiPoly f(2);
      const std::size_t n = static_cast<std::size_t>(range(1, static_cast<std::int64_t>(terms)));
      for (std::size_t i = 0; i < n; ++i) {
        const nonarch::Exponent e{static_cast<unsigned>(range(0, deg)), static_cast<unsigned>(range(0, deg))};
        f.add_term(e, nonzero_rational(bound));
      }
      if (!f.is_zero()) return f;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// v_p by repeated exact division, independent of mpz_remove.
inline std::int64_t vp_by_division(const Rational& a, std::uint64_t p) {
  auto count = [p](Integer n) {
    if (n < 0) n = -n;
    std::int64_t k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    return k;
  };
  return count(a.num()) - count(a.den());
}

/// Legendre's floor sum: sum_i floor(n / p^i).
inline std::uint64_t legendre_floor_sum(std::uint64_t n, std::uint64_t p) {
  std::uint64_t s = 0;
  for (std::uint64_t q = p; q <= n; q *= p) {
    s += n / q;
    if (q > n / p) break;
  }
  return s;
}

inline Integer ipow(const Integer& b, unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

/// Canonical residue of a rational with p-free denominator modulo m, by
/// brute-force search for the inverse of the denominator.
inline Integer reduce_brute(const Rational& a, const Integer& m) {
  Integer den = a.den() % m;
  Integer inv = 0;
  for (Integer t = 1; t < m; ++t)
    if ((den * t) % m == 1) {
      inv = t;
      break;
    }
  Integer r = (a.num() * inv) % m;
  if (r < 0) r += m;
  return r;
}

/// prod (T - r_i), times lc.
inline Polynomial from_roots(const std::vector<Rational>& roots, const Rational& lc = Rational(1)) {
  Polynomial f = Polynomial::constant(lc);
  for (const auto& r : roots) f = f * Polynomial({-r, Rational(1)});
  return f;
}

/// Minimum over coefficients of v_p; INT64_MAX for zero.
inline std::int64_t min_vp(const Polynomial& f, std::uint64_t p) {
  std::int64_t best = INT64_MAX;
  for (const auto& c : f.coefficients())
    if (!c.is_zero()) best = std::min(best, vp_by_division(c, p));
  return best;
}

}  // namespace testsupport

#endif  // NONARCH_TESTS_SUPPORT_HPP
