#ifndef NONARCH_VALUATION_HPP
#define NONARCH_VALUATION_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/rational.hpp"

namespace nonarch {

namespace detail {

inline std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod_u64(r, b, m);
    b = mul_mod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::pow_mod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = detail::mul_mod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// A certified prime below 2^64.
class Prime {
 public:
  explicit Prime(std::uint64_t p) : p_(p) {
    if (!is_prime_u64(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  }
  std::uint64_t value() const { return p_; }
  Integer integer() const { return Integer(static_cast<unsigned long>(p_)); }
  /// p^k as an arbitrary precision integer.
  Integer power(std::int64_t k) const {
    if (k < 0) fail(ErrorCode::PreconditionViolated, "negative exponent for p^k");
    return pow_integer(integer(), static_cast<unsigned long>(k));
  }
  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  std::uint64_t p_;
};

/// Exponent of p in a nonzero integer; strips it from n in place.
inline std::int64_t remove_factor(Integer& n, const Prime& p) {
  if (n == 0) return 0;
  const Integer pp = p.integer();
  return static_cast<std::int64_t>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

inline std::int64_t vp_integer(Integer n, const Prime& p) {
  if (n == 0) fail(ErrorCode::PreconditionViolated, "vp of integer zero");
  return remove_factor(n, p);
}

/// p-adic valuation of a rational; +inf for zero.
inline ExtRational vp(const Rational& a, const Prime& p) {
  if (a.is_zero()) return ExtRational::infinity();
  Integer num = a.num();
  Integer den = a.den();
  const std::int64_t up = remove_factor(num, p);
  const std::int64_t down = remove_factor(den, p);
  return ExtRational(Rational(static_cast<long>(up - down)));
}

/// Integer valuation of a nonzero rational.
inline std::int64_t vp_int(const Rational& a, const Prime& p) {
  if (a.is_zero()) fail(ErrorCode::PreconditionViolated, "vp_int of zero");
  Integer num = a.num();
  Integer den = a.den();
  return remove_factor(num, p) - remove_factor(den, p);
}

struct TrivialPlace {
  friend bool operator==(const TrivialPlace&, const TrivialPlace&) = default;
};
struct PadicPlace {
  Prime p;
  friend bool operator==(const PadicPlace&, const PadicPlace&) = default;
};
struct RealPlace {
  friend bool operator==(const RealPlace&, const RealPlace&) = default;
};

/// An absolute value on Q: trivial, p-adic, or the usual archimedean one.
using Place = std::variant<TrivialPlace, PadicPlace, RealPlace>;

inline std::string place_name(const Place& place) {
  if (std::holds_alternative<TrivialPlace>(place)) return "0";
  if (std::holds_alternative<RealPlace>(place)) return "inf";
  return std::to_string(std::get<PadicPlace>(place).p.value());
}

/// Additive valuation at a non-archimedean place (trivial or p-adic).
inline ExtRational valuation_at(const Rational& a, const Place& place) {
  if (a.is_zero()) return ExtRational::infinity();
  if (const auto* pp = std::get_if<PadicPlace>(&place)) return vp(a, pp->p);
  if (std::holds_alternative<TrivialPlace>(place)) return ExtRational(0);
  fail(ErrorCode::PreconditionViolated, "the archimedean place has no additive valuation");
}

/// |a| at the given place as an exact rational (p-adic: p^{-v_p(a)}).
inline Rational abs_at_place(const Rational& a, const Place& place) {
  if (a.is_zero()) return Rational(0);
  if (std::holds_alternative<TrivialPlace>(place)) return Rational(1);
  if (std::holds_alternative<RealPlace>(place)) return a.abs();
  const Prime& p = std::get<PadicPlace>(place).p;
  const std::int64_t v = vp_int(a, p);
  return pow(Rational(p.integer()), -v);
}

/// Prime factorisation by trial division. Candidates run up to `bound`; a
/// cofactor left over is accepted only if it is certifiably prime (below
/// 2^64 and passing deterministic Miller-Rabin, or below bound^2).
inline std::vector<std::pair<Integer, unsigned>> factor_trial(Integer n, const Integer& bound) {
  std::vector<std::pair<Integer, unsigned>> out;
  if (n < 0) n = -n;
  if (n == 0) fail(ErrorCode::PreconditionViolated, "cannot factor zero");
  auto take = [&](const Integer& d) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  };
  auto certified_prime = [&] { return n.fits_ulong_p() && is_prime_u64(n.get_ui()); };
  take(Integer(2));
  take(Integer(3));
  if (n > 1 && !certified_prime()) {
    for (Integer d = 5, step = 2; d * d <= n; d += step, step = 6 - step) {
      if (d > bound)
        fail(ErrorCode::SizeGuardExceeded, "trial division bound " + bound.get_str() + " exceeded while factoring");
      const Integer before = n;
      take(d);
      if (n != before && (n == 1 || certified_prime())) break;
    }
  }
  if (n > 1) {
    const bool certified = (n.fits_ulong_p() && is_prime_u64(n.get_ui())) || n <= bound * bound;
    if (!certified) fail(ErrorCode::SizeGuardExceeded, "unfactored cofactor " + n.get_str());
    out.emplace_back(n, 1);
  }
  return out;
}

struct PlaceValue {
  std::string place;  ///< "inf" or the prime, as text
  Rational value;
};

struct ProductFormulaReport {
  bool holds = false;
  std::vector<PlaceValue> breakdown;
  Rational product;
  Rational trivial;
};

/// Checks |a|_inf * prod_p |a|_p = |a|_0 exactly, listing every place where
/// |a| != 1 (plus the archimedean one).
inline ProductFormulaReport product_formula_check(const Rational& a, const Integer& bound = Integer(1000000000)) {
  ProductFormulaReport r;
  r.breakdown.push_back({"inf", abs_at_place(a, RealPlace{})});
  r.trivial = abs_at_place(a, TrivialPlace{});
  if (a.is_zero()) {
    r.product = 0;
    r.holds = r.product == r.trivial;
    return r;
  }
  std::vector<Integer> primes;
  for (const auto& [q, e] : factor_trial(a.num(), bound)) primes.push_back(q);
  for (const auto& [q, e] : factor_trial(a.den(), bound)) primes.push_back(q);
  std::sort(primes.begin(), primes.end());
  Rational prod = r.breakdown.front().value;
  for (const auto& q : primes) {
    if (!q.fits_ulong_p()) fail(ErrorCode::SizeGuardExceeded, "prime factor beyond 64 bits");
    const Prime p(q.get_ui());
    const Rational abs_p = abs_at_place(a, PadicPlace{p});
    r.breakdown.push_back({q.get_str(), abs_p});
    prod *= abs_p;
  }
  r.product = prod;
  r.holds = prod == r.trivial;
  return r;
}

/// Sum of the base-p digits of n.
inline std::uint64_t digit_sum_base_p(std::uint64_t n, const Prime& p) {
  std::uint64_t s = 0;
  while (n) {
    s += n % p.value();
    n /= p.value();
  }
  return s;
}

/// v_p(n!) by Legendre's closed form (n - s_p(n)) / (p - 1).
inline std::uint64_t vp_factorial(std::uint64_t n, const Prime& p) {
  return (n - digit_sum_base_p(n, p)) / (p.value() - 1);
}

}  // namespace nonarch

#endif  // NONARCH_VALUATION_HPP
