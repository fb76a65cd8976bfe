#ifndef NONARCH_PADIC_ROOTS_HPP
#define NONARCH_PADIC_ROOTS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "nonarch/error.hpp"
#include "nonarch/hensel.hpp"
#include "nonarch/padic.hpp"
#include "nonarch/polynomial.hpp"
#include "nonarch/valuation.hpp"

namespace nonarch {

/// The (p-1)-th root of unity congruent to u mod p, to absolute precision N.
inline PadicNumber teichmuller(const Integer& u, const Prime& p, std::int64_t N) {
  if (mpz_divisible_ui_p(u.get_mpz_t(), p.value()))
    fail(ErrorCode::PreconditionViolated, "Teichmuller representative of a residue divisible by p");
  const Polynomial phi = Polynomial::monomial(1, p.value() - 1) - Polynomial::constant(1);
  return simple_root_lift(phi, u, p, N);
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
inline Integer sqrt_mod_prime(const Integer& a, const Prime& p) {
  const Integer pp = p.integer();
  const Integer x = mod(a, pp);
  if (x == 0) return 0;
  if (pow_mod(x, (pp - 1) / 2, pp) != 1) fail(ErrorCode::PreconditionViolated, "not a quadratic residue");
  Integer q = pp - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (pow_mod(z, (pp - 1) / 2, pp) == 1) ++z;
  Integer c = pow_mod(z, q, pp);
  Integer r = pow_mod(x, (q + 1) / 2, pp);
  Integer t = pow_mod(x, q, pp);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Integer t2 = t;
    while (t2 != 1) {
      t2 = mod(t2 * t2, pp);
      ++i;
    }
    Integer b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = mod(b * b, pp);
    r = mod(r * b, pp);
    c = mod(b * b, pp);
    t = mod(t * c, pp);
    m = i;
  }
  return r;
}

struct SqrtResult {
  std::optional<PadicNumber> root;  ///< empty when x has no square root in Q_p
  std::string reason;               ///< why there is no root
};

/// Square root in Q_p. For odd p the branch whose leading digit is the
/// smaller residue is returned; for p = 2 the branch congruent to 1 mod 4.
inline SqrtResult padic_sqrt(const PadicNumber& x) {
  const Prime p = x.prime();
  if (x.is_exact_zero()) return {x, ""};
  if (x.is_zero_at_precision())
    return {PadicNumber::zero_at_precision(p, (*x.absolute_precision() + 1) / 2), ""};
  const std::int64_t v = *x.valuation();
  if (v % 2 != 0) return {std::nullopt, "odd valuation " + std::to_string(v)};
  const std::int64_t N = x.relative_precision();
  const Integer u = x.unit();
  const Integer pp = p.integer();
  const Polynomial phi = Polynomial::monomial(1, 2) - Polynomial::constant(Rational(u));
  if (p.value() == 2) {
    if (N < 3) {
      if (N >= 2 && mod(u, 4) == 3) return {std::nullopt, "unit is 3 mod 4"};
      fail(ErrorCode::InsufficientPrecision, "deciding squares in Q_2 needs the unit modulo 8");
    }
    if (mod(u, 8) != 1) return {std::nullopt, "unit is not 1 mod 8"};
    // v(phi(1)) >= 3 > 2 = 2 v(phi'(1)), so Newton from 1 converges.
    const LiftResult lift = newton_lift(phi, PadicNumber::from_rational(1, p, N), N);
    Integer r = lift.root.residue();
    return {PadicNumber::from_unit(p, v / 2, r, N - 1), ""};
  }
  if (pow_mod(mod(u, pp), (pp - 1) / 2, pp) != 1) return {std::nullopt, "unit is not a square modulo p"};
  Integer r0 = sqrt_mod_prime(u, p);
  if (pp - r0 < r0) r0 = pp - r0;
  const PadicNumber r = simple_root_lift(phi, r0, p, N);
  return {PadicNumber::from_unit(p, v / 2, r.residue(), N), ""};
}

}  // namespace nonarch

#endif  // NONARCH_PADIC_ROOTS_HPP
