#ifndef NONARCH_SLOPE_FACTORIZATION_HPP
#define NONARCH_SLOPE_FACTORIZATION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/newton_polygon.hpp"
#include "nonarch/polynomial.hpp"
#include "nonarch/tate_series.hpp"

namespace nonarch {

struct SlopeFactor {
  Polynomial factor;  ///< monic, single-slope polygon
  Rational slope;
};

/// Splits a monic polynomial with c_0 != 0 into monic factors, one per slope
/// of its Newton polygon, with prod P_i = phi modulo p^target.
///
/// phi is first rescaled (T = p^{-j} U) so that every root is integral. The
/// factor holding the roots of largest valuation r is then peeled off by
/// Weierstrass preparation on the disc of radius p^{-r}, and the cofactor is
/// processed the same way. Distinct slopes mean the two parts have no root
/// valuation in common, so their resultant is nonzero and the lifting
/// condition is reachable.
inline std::vector<SlopeFactor> slope_factorization(const Polynomial& phi, const Prime& p, std::int64_t target) {
  if (phi.is_zero()) fail(ErrorCode::ZeroPolynomial, "slope factorisation of zero");
  if (!phi.is_monic()) fail(ErrorCode::NotMonic, "slope factorisation needs a monic polynomial");
  if (phi.coeff(0).is_zero()) fail(ErrorCode::PreconditionViolated, "constant coefficient is zero");
  if (target < 1) fail(ErrorCode::PreconditionViolated, "target precision must be at least 1");
  const NewtonPolygon ng = newton_polygon(phi, p);
  if (ng.segments.size() <= 1) {
    const Rational slope = ng.segments.empty() ? Rational(0) : ng.segments.front().slope;
    return {{phi, slope}};
  }
  const std::int64_t d = phi.degree();
  // Smallest root valuation is minus the last slope.
  const Rational rmin = -ng.segments.back().slope;
  const std::int64_t j = rmin.sign() < 0 ? (-rmin).ceil().get_si() : 0;
  const Polynomial scaled =
      detail::p_power(p, j * d) * phi.scaled_argument(detail::p_power(p, -j));  // monic, integral
  const std::int64_t v0 = vp_int(scaled.coeff(0), p);
  const std::int64_t work = std::max(target + j * d, v0 + 1) + 1;

  std::vector<SlopeFactor> out;
  Polynomial cur = scaled;
  for (std::size_t i = 0; i + 1 < ng.segments.size(); ++i) {
    const Rational r = -ng.segments[i].slope + Rational(j);
    const TruncatedSeries f = TruncatedSeries::from_polynomial(cur, p, r, static_cast<std::size_t>(cur.degree()));
    const WeierstrassResult w = weierstrass_prepare(f, work);
    if (static_cast<std::int64_t>(w.N) != ng.segments[i].length)
      fail(ErrorCode::PreconditionViolated, "Weierstrass degree differs from the segment length");
    out.push_back({w.P, ng.segments[i].slope});
    cur = w.psi.to_polynomial();
  }
  out.push_back({cur, ng.segments.back().slope});

  // Back to the original variable: P(T) = p^{-j deg P} P~(p^j T).
  for (auto& sf : out) {
    const Polynomial rounded = [&] {
      std::vector<Rational> c = sf.factor.coefficients();
      for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = round_padic(c[i], p, work);
      return Polynomial(std::move(c));
    }();
    sf.factor = detail::p_power(p, -j * rounded.degree()) * rounded.scaled_argument(detail::p_power(p, j));
    // Integral factors are reduced to the target, but never below v(c_0) + 1
    // so that the reduced factor keeps its polygon.
    if (j == 0) {
      std::vector<Rational> c = sf.factor.coefficients();
      const std::int64_t keep = std::max(target, vp_int(c.front(), p) + 1);
      for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = round_padic(c[i], p, keep);
      sf.factor = Polynomial(std::move(c));
    }
  }
  return out;
}

}  // namespace nonarch

#endif  // NONARCH_SLOPE_FACTORIZATION_HPP
