#ifndef NONARCH_TATE_SERIES_HPP
#define NONARCH_TATE_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/hensel.hpp"
#include "nonarch/linalg.hpp"
#include "nonarch/newton_polygon.hpp"
#include "nonarch/padic.hpp"
#include "nonarch/polynomial.hpp"
#include "nonarch/rational.hpp"
#include "nonarch/resultant.hpp"
#include "nonarch/valuation.hpp"

namespace nonarch {

/// A restricted power series on the closed disc of radius p^{-s}, known
/// modulo T^{M+1}: coefficients c_0..c_M.
class TruncatedSeries {
 public:
  TruncatedSeries(Prime p, std::vector<Rational> coeffs, Rational s, std::size_t M)
      : p_(p), c_(std::move(coeffs)), s_(std::move(s)), M_(M) {
    c_.resize(M_ + 1);
  }
  /// Truncation order defaults to the last stored index.
  TruncatedSeries(Prime p, std::vector<Rational> coeffs, Rational s = Rational(0))
      : TruncatedSeries(p, coeffs, std::move(s), coeffs.empty() ? 0 : coeffs.size() - 1) {}
  static TruncatedSeries from_polynomial(const Polynomial& f, const Prime& p, const Rational& s, std::size_t M) {
    return TruncatedSeries(p, f.truncated(M + 1).coefficients(), s, M);
  }

  const Prime& prime() const { return p_; }
  const Rational& radius_exponent() const { return s_; }
  std::size_t order() const { return M_; }
  const std::vector<Rational>& coefficients() const { return c_; }
  const Rational& operator[](std::size_t n) const { return c_[n]; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x.is_zero(); });
  }
  Polynomial to_polynomial() const { return Polynomial(c_); }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.p_ == b.p_ && a.s_ == b.s_ && a.M_ == b.M_ && a.c_ == b.c_;
  }

  std::string to_string() const {
    return to_polynomial().to_string() + " + O(T^" + std::to_string(M_ + 1) + ")";
  }

 private:
  Prime p_;
  std::vector<Rational> c_;
  Rational s_;
  std::size_t M_;
};

namespace detail {

inline void check_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!(a.prime() == b.prime())) fail(ErrorCode::PrimeMismatch, "series over different primes");
  if (a.radius_exponent() != b.radius_exponent()) fail(ErrorCode::RadiusMismatch, "series on different discs");
}

}  // namespace detail

struct GaussNorm {
  ExtRational w;                        ///< min_n v(c_n) + n*s
  std::optional<std::size_t> argmin_last;  ///< largest index attaining w
};

/// Gauss norm of a polynomial on the disc of radius p^{-s}, in v-units.
inline GaussNorm gauss_norm_v(const std::vector<Rational>& c, const Prime& p, const Rational& s) {
  GaussNorm g;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c[n].is_zero()) continue;
    const ExtRational val(Rational(vp_int(c[n], p)) + Rational(static_cast<unsigned long>(n)) * s);
    if (val <= g.w) {
      g.w = val;
      g.argmin_last = n;
    }
  }
  return g;
}
inline GaussNorm gauss_norm_v(const TruncatedSeries& f) {
  return gauss_norm_v(f.coefficients(), f.prime(), f.radius_exponent());
}

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::check_compatible(a, b);
  const std::size_t M = std::min(a.order(), b.order());
  std::vector<Rational> c(M + 1);
  for (std::size_t n = 0; n <= M; ++n) c[n] = a[n] + b[n];
  return TruncatedSeries(a.prime(), std::move(c), a.radius_exponent(), M);
}

inline TruncatedSeries operator-(const TruncatedSeries& a) {
  std::vector<Rational> c = a.coefficients();
  for (auto& x : c) x = -x;
  return TruncatedSeries(a.prime(), std::move(c), a.radius_exponent(), a.order());
}

inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::check_compatible(a, b);
  const std::size_t M = std::min(a.order(), b.order());
  std::vector<Rational> c(M + 1);
  for (std::size_t i = 0; i <= M; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= M; ++j)
      if (!b[j].is_zero()) c[i + j] += a[i] * b[j];
  }
  return TruncatedSeries(a.prime(), std::move(c), a.radius_exponent(), M);
}

/// Units of the Tate algebra: v(c_n) + n*s > v(c_0) for every n > 0.
inline bool is_unit(const TruncatedSeries& f) {
  if (f[0].is_zero()) return false;
  const Rational v0(vp_int(f[0], f.prime()));
  for (std::size_t n = 1; n <= f.order(); ++n) {
    if (f[n].is_zero()) continue;
    if (Rational(vp_int(f[n], f.prime())) + Rational(static_cast<unsigned long>(n)) * f.radius_exponent() <= v0)
      return false;
  }
  return true;
}

/// Inverse of a unit via the geometric series c_0^{-1} sum_k u^k, u = 1 - f/c_0.
inline TruncatedSeries invert(const TruncatedSeries& f) {
  if (!is_unit(f)) fail(ErrorCode::NotAUnit, "series is not a unit on its disc");
  const Rational c0inv = f[0].inverse();
  std::vector<Rational> uc(f.order() + 1);
  for (std::size_t n = 1; n <= f.order(); ++n) uc[n] = -(f[n] * c0inv);
  const TruncatedSeries u(f.prime(), uc, f.radius_exponent(), f.order());
  std::vector<Rational> one(f.order() + 1);
  one[0] = 1;
  TruncatedSeries power(f.prime(), one, f.radius_exponent(), f.order());
  TruncatedSeries sum = power;
  // u has no constant term, so u^k vanishes modulo T^{M+1} once k > M.
  for (std::size_t k = 1; k <= f.order(); ++k) {
    power = power * u;
    sum = sum + power;
  }
  std::vector<Rational> c = sum.coefficients();
  for (auto& x : c) x *= c0inv;
  return TruncatedSeries(f.prime(), std::move(c), f.radius_exponent(), f.order());
}

/// f(a + T) by the divided-power formula; requires |a| <= R, i.e. v(a) >= s.
inline TruncatedSeries taylor_shift(const TruncatedSeries& f, const Rational& a) {
  if (!a.is_zero() && Rational(vp_int(a, f.prime())) < f.radius_exponent())
    fail(ErrorCode::ConvergencePrecondition, "shift point lies outside the disc");
  const std::size_t M = f.order();
  std::vector<Rational> apow(M + 1);
  apow[0] = 1;
  for (std::size_t i = 1; i <= M; ++i) apow[i] = apow[i - 1] * a;
  std::vector<Rational> c(M + 1);
  for (std::size_t n = 0; n <= M; ++n) {
    Integer binom = 1;  // C(m, n) for m = n, n+1, ...
    for (std::size_t m = n; m <= M; ++m) {
      if (m > n) binom = binom * Integer(static_cast<unsigned long>(m)) / Integer(static_cast<unsigned long>(m - n));
      if (!f[m].is_zero()) c[n] += f[m] * Rational(binom) * apow[m - n];
    }
  }
  return TruncatedSeries(f.prime(), std::move(c), f.radius_exponent(), M);
}

/// f(g) by Horner; g must map its disc into the disc of f (w_{s_g}(g) >= s_f).
inline TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (!(f.prime() == g.prime())) fail(ErrorCode::PrimeMismatch, "series over different primes");
  const GaussNorm ng = gauss_norm_v(g);
  if (ng.w < ExtRational(f.radius_exponent()))
    fail(ErrorCode::ConvergencePrecondition, "inner series leaves the disc of the outer one");
  const std::size_t M = std::min(f.order(), g.order());
  const TruncatedSeries gg(g.prime(), g.coefficients(), g.radius_exponent(), M);
  std::vector<Rational> zero(M + 1);
  TruncatedSeries acc(g.prime(), zero, g.radius_exponent(), M);
  for (std::size_t m = f.order() + 1; m-- > 0;) {
    acc = acc * gg;
    std::vector<Rational> c = acc.coefficients();
    c[0] += f[m];
    acc = TruncatedSeries(g.prime(), std::move(c), g.radius_exponent(), M);
  }
  return acc;
}

struct SeriesDivision {
  TruncatedSeries psi;
  Polynomial rho;
};

/// f = P*psi + rho with deg rho < deg P, for P dominant on the disc:
/// v(P_d) + d*s = w_s(P).
inline SeriesDivision divide_by_poly(const TruncatedSeries& f, const Polynomial& P) {
  if (P.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  const std::size_t d = static_cast<std::size_t>(P.degree());
  const GaussNorm np = gauss_norm_v(P.coefficients(), f.prime(), f.radius_exponent());
  if (!np.argmin_last || *np.argmin_last != d)
    fail(ErrorCode::DominanceFailed, "leading term of the divisor does not attain its Gauss norm");
  const auto [q, r] = divmod(f.to_polynomial(), P);
  const std::size_t M = f.order() >= d ? f.order() - d : 0;
  return {TruncatedSeries(f.prime(), q.coefficients(), f.radius_exponent(), M), r};
}

/// Number of zeros bound on the closed disc: the last index attaining the
/// Gauss norm.
inline std::size_t strassmann_bound(const TruncatedSeries& f) {
  const GaussNorm g = gauss_norm_v(f);
  if (!g.argmin_last) fail(ErrorCode::ZeroPolynomial, "Strassmann bound of the zero series");
  return *g.argmin_last;
}

/// Newton polygon of the truncation. Only its initial segments are
/// guaranteed to agree with the polygon of the full series.
inline NewtonPolygon series_polygon(const TruncatedSeries& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "polygon of the zero series");
  if (f[0].is_zero()) fail(ErrorCode::PreconditionViolated, "series polygon needs c_0 != 0");
  return newton_polygon(f.to_polynomial(), f.prime());
}

/// sum_{n<=M} T^n / n!
inline TruncatedSeries exp_truncated(std::size_t M, const Prime& p, const Rational& s = Rational(0)) {
  std::vector<Rational> c(M + 1);
  Integer fact = 1;
  for (std::size_t n = 0; n <= M; ++n) {
    if (n > 0) fact *= static_cast<unsigned long>(n);
    c[n] = Rational(Integer(1), fact);
  }
  return TruncatedSeries(p, std::move(c), s, M);
}

/// log(1+T) = sum_{n>=1} (-1)^{n-1} T^n / n, truncated at M.
inline TruncatedSeries log_truncated(std::size_t M, const Prime& p, const Rational& s = Rational(0)) {
  std::vector<Rational> c(M + 1);
  for (std::size_t n = 1; n <= M; ++n)
    c[n] = Rational(Integer(n % 2 == 1 ? 1 : -1), Integer(static_cast<unsigned long>(n)));
  return TruncatedSeries(p, std::move(c), s, M);
}

/// Closed forms for the polygons of exp and log(1+T): -t/(p-1) for exp on
/// t >= 0; for log the value -m at t = p^m, affine in between, +inf on [0, 1).
enum class SeriesKind { Exp, Log };

inline ExtRational exp_log_polygon_value(SeriesKind kind, const Prime& p, const Rational& t) {
  if (t.sign() < 0) return ExtRational::infinity();
  const Rational pm1(p.integer() - 1);
  if (kind == SeriesKind::Exp) return ExtRational(-t / pm1);
  if (t < Rational(1)) return ExtRational::infinity();
  Integer lo = 1;
  long m = 0;
  while (Rational(lo * p.integer()) <= t) {
    lo *= p.integer();
    ++m;
  }
  if (Rational(lo) == t) return ExtRational(Rational(-m));
  const Rational a(lo);
  const Rational b(lo * p.integer());
  return ExtRational(Rational(-m) - (t - a) / (b - a));
}

struct WeierstrassResult {
  Polynomial P;  ///< monic of degree N
  TruncatedSeries psi;  ///< unit on the disc
  std::size_t N = 0;
  std::optional<std::int64_t> residual_valuation;  ///< min_n v(f_n - (P*psi)_n); none if exact
  int seeding_steps = 0;
  int lift_iterations = 0;
};

namespace detail {

/// One Newton step on the lower coefficients of (a, b) towards a*b = h,
/// without the convergence precondition. Returns the corrected pair rounded
/// to absolute precision W.
inline std::pair<Polynomial, Polynomial> factor_step(const Polynomial& h, const Polynomial& a, const Polynomial& b,
                                                     const Prime& p, std::int64_t W) {
  const std::size_t da = static_cast<std::size_t>(a.degree());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  const std::size_t n = da + db;
  const Polynomial d = a * b - h;
  std::vector<Rational> rhs(n);
  for (std::size_t k = 0; k < n; ++k) rhs[k] = d.coeff(k);
  Matrix<Rational> J(n, std::vector<Rational>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < da && i <= k; ++i) J[k][i] = b.coeff(k - i);
    for (std::size_t j = 0; j < db && j <= k; ++j) J[k][da + j] = a.coeff(k - j);
  }
  const std::int64_t delta = jacobian_valuation_mod(J, p, W);
  if (delta >= W) fail(ErrorCode::SingularJacobian, "factor Jacobian singular at working precision");
  const auto y = solve_padic(J, rhs, p, W + delta, W);
  std::vector<Rational> ac = a.coefficients(), bc = b.coefficients();
  for (std::size_t i = 0; i < da; ++i) ac[i] = round_padic(ac[i] - y[i], p, W);
  for (std::size_t j = 0; j < db; ++j) bc[j] = round_padic(bc[j] - y[da + j], p, W);
  return {Polynomial(std::move(ac)), Polynomial(std::move(bc))};
}

inline Rational p_power(const Prime& p, std::int64_t e) {
  return e >= 0 ? Rational(p.power(e)) : Rational(Integer(1), p.power(-e));
}

}  // namespace detail

/// Weierstrass preparation f = P * psi of the truncation, with P monic of
/// degree N = argmin_last of the Gauss norm and psi a unit. Coefficients of
/// f - P*psi have valuation > budget.
///
/// The disc is rescaled by T = p^k U with k = floor(s) so that the remaining
/// radius exponent lies in [0, 1) and the coefficients are integral. The
/// initial factor sum_{n<=N} (c_n/c_N) U^n is refined by Newton steps on
/// coefficient space until the factor-lifting condition
/// v(h - P*psi) > 2 v(Res(P, psi)) holds, then handed to lift_factorization.
inline WeierstrassResult weierstrass_prepare(const TruncatedSeries& f, std::int64_t budget) {
  const Prime& p = f.prime();
  const GaussNorm g = gauss_norm_v(f);
  if (!g.argmin_last) fail(ErrorCode::ZeroPolynomial, "Weierstrass preparation of the zero series");
  const std::size_t N = *g.argmin_last;
  WeierstrassResult out{Polynomial::constant(1), f, N, std::nullopt, 0, 0};
  if (N == 0) return out;
  const Polynomial fp = f.to_polynomial();
  const std::size_t D = static_cast<std::size_t>(fp.degree());
  if (D == N) {
    out.P = fp.leading().inverse() * fp;
    out.psi = TruncatedSeries(p, {fp.leading()}, f.radius_exponent(), f.order());
    return out;
  }

  const Rational& s = f.radius_exponent();
  const std::int64_t k = s.floor().get_si();
  const Polynomial gpoly = fp.scaled_argument(detail::p_power(p, k));
  const std::int64_t e = *detail::min_valuation(gpoly, p);
  const Polynomial h = detail::p_power(p, -e) * gpoly;
  const std::int64_t vN = vp_int(h.coeff(N), p);
  const std::int64_t M = static_cast<std::int64_t>(f.order());
  const std::int64_t work = std::max(budget - e + std::max<std::int64_t>(0, k) * M, vN) + 2;

  std::vector<Rational> p0(N + 1);
  const Rational hN_inv = h.coeff(N).inverse();
  for (std::size_t n = 0; n <= N; ++n) p0[n] = round_padic(h.coeff(n) * hN_inv, p, work);
  p0[N] = 1;
  Polynomial P(std::move(p0));
  Polynomial psi = divmod(h, P).first;
  {
    std::vector<Rational> c = psi.coefficients();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = round_padic(c[i], p, work);
    psi = Polynomial(std::move(c));
  }

  const int guard = 200;
  bool exact = false;
  for (;;) {
    const Polynomial defect = h - P * psi;
    if (defect.is_zero()) {
      exact = true;
      break;
    }
    const std::int64_t sigma = *detail::min_valuation(defect, p);
    Matrix<Integer> syl;
    {
      const auto sm = sylvester_matrix(P.coefficients(), psi.coefficients(), N, D - N, Rational(0));
      const Integer m = p.power(work);
      syl.assign(sm.size(), std::vector<Integer>(sm.size()));
      for (std::size_t i = 0; i < sm.size(); ++i)
        for (std::size_t j = 0; j < sm.size(); ++j) syl[i][j] = residue_mod(sm[i][j], m);
    }
    const std::int64_t rv = determinant_mod(std::move(syl), p, work).valuation;
    if (rv < work && sigma > 2 * rv) break;
    if (out.seeding_steps >= guard) fail(ErrorCode::NoConvergence, "Weierstrass seeding did not converge");
    std::tie(P, psi) = detail::factor_step(h, P, psi, p, work);
    ++out.seeding_steps;
  }
  if (!exact) {
    const FactorLift lift = lift_factorization(h, P, psi, p, work);
    P = lift.psi;
    psi = lift.eta;
    out.lift_iterations = lift.iterations;
  }

  // Undo the scaling: P_T(T) = p^{kN} P(T/p^k), psi_T(T) = p^{e-kN} psi(T/p^k).
  const Rational inv_scale = detail::p_power(p, -k);
  out.P = detail::p_power(p, k * static_cast<std::int64_t>(N)) * P.scaled_argument(inv_scale);
  const Polynomial psiT = detail::p_power(p, e - k * static_cast<std::int64_t>(N)) * psi.scaled_argument(inv_scale);
  out.psi = TruncatedSeries::from_polynomial(psiT, p, s, f.order());
  const Polynomial residual = (fp - out.P * psiT).truncated(f.order() + 1);
  out.residual_valuation = detail::min_valuation(residual, p);
  return out;
}

}  // namespace nonarch

#endif  // NONARCH_TATE_SERIES_HPP
