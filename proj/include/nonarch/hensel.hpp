#ifndef NONARCH_HENSEL_HPP
#define NONARCH_HENSEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/linalg.hpp"
#include "nonarch/multipoly.hpp"
#include "nonarch/padic.hpp"
#include "nonarch/polynomial.hpp"
#include "nonarch/rational.hpp"
#include "nonarch/resultant.hpp"
#include "nonarch/valuation.hpp"

namespace nonarch {

/// Trace of a Newton run over Z_p^n.
struct NewtonReport {
  std::vector<Rational> point;  ///< root, reduced into [0, p^target) unless the start was exact
  int iterations = 0;
  bool exact_start = false;
  std::int64_t jacobian_valuation = 0;  ///< v(det J(a)) at the start point
  std::int64_t residual_valuation = 0;  ///< min_i v(Phi_i(a)) at the start point
  std::vector<std::int64_t> residual_trace;  ///< min_i v(Phi_i(a_n)), n = 0..iterations
  std::vector<std::int64_t> jacobian_trace;  ///< v(det J(a_n)), n = 0..iterations
};

namespace detail {

inline std::optional<std::int64_t> min_valuation(const std::vector<Rational>& xs, const Prime& p) {
  std::optional<std::int64_t> best;
  for (const auto& x : xs) {
    if (x.is_zero()) continue;
    const std::int64_t v = vp_int(x, p);
    if (!best || v < *best) best = v;
  }
  return best;
}

inline std::optional<std::int64_t> min_valuation(const Polynomial& f, const Prime& p) {
  return min_valuation(f.coefficients(), p);
}

inline void require_integral(const Polynomial& f, const Prime& p, const char* what) {
  if (auto v = min_valuation(f, p); v && *v < 0)
    fail(ErrorCode::NotIntegral, std::string(what) + " has a coefficient outside Z_p");
}

inline std::int64_t jacobian_valuation_mod(const Matrix<Rational>& J, const Prime& p, std::int64_t cap) {
  if (cap <= 0) return 0;
  const Integer m = p.power(cap);
  Matrix<Integer> a(J.size(), std::vector<Integer>(J.size()));
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t j = 0; j < J.size(); ++j) a[i][j] = residue_mod(J[i][j], m);
  return determinant_mod(std::move(a), p, cap).valuation;
}

}  // namespace detail

/// Newton's method a <- a - J(a)^{-1} Phi(a) over Z_p^n, shared by every
/// lifting entry point. Requires min v(Phi(a)) > 2 v(det J(a)); iterates are
/// rounded p-adically and the loop stops once min v(Phi(a_n)) >= target + delta,
/// which pins the root down modulo p^target.
template <class Residual, class Jacobian>
NewtonReport newton_engine(Residual&& residual, Jacobian&& jacobian, std::vector<Rational> a, const Prime& p,
                           std::int64_t target) {
  if (target < 1) fail(ErrorCode::PreconditionViolated, "target precision must be at least 1");
  for (const auto& x : a)
    if (!x.is_zero() && vp_int(x, p) < 0) fail(ErrorCode::NotIntegral, "start point outside Z_p^n");
  NewtonReport rep;
  std::vector<Rational> phi = residual(a);
  auto sigma = detail::min_valuation(phi, p);
  if (!sigma) {
    rep.point = std::move(a);
    rep.exact_start = true;
    return rep;
  }
  Matrix<Rational> J = jacobian(a);
  const std::int64_t s0 = *sigma;
  const std::int64_t delta = detail::jacobian_valuation_mod(J, p, s0);
  if (s0 <= 2 * delta)
    fail(ErrorCode::HenselConditionFailed,
         "Newton condition fails: v(Phi(a)) = " + std::to_string(s0) + " but " +
             (delta >= s0 ? "v(det J(a)) >= " + std::to_string(s0) : "2*v(det J(a)) = " + std::to_string(2 * delta)));
  rep.jacobian_valuation = delta;
  rep.residual_valuation = s0;
  rep.residual_trace.push_back(s0);
  rep.jacobian_trace.push_back(delta);

  const std::int64_t work = target + 2 * delta + 2;
  const std::int64_t guard = 4 * (64 + target);
  std::int64_t s = s0;
  while (s < target + delta) {
    if (rep.iterations >= guard) fail(ErrorCode::NoConvergence, "Newton iteration did not converge");
    const auto y = solve_padic(J, phi, p, work + delta, work);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = round_padic(a[i] - y[i], p, work);
    ++rep.iterations;
    phi = residual(a);
    sigma = detail::min_valuation(phi, p);
    J = jacobian(a);
    rep.jacobian_trace.push_back(detail::jacobian_valuation_mod(J, p, work + delta));
    if (!sigma) break;
    s = *sigma;
    rep.residual_trace.push_back(s);
  }
  for (auto& x : a) x = round_padic(x, p, target);
  rep.point = std::move(a);
  return rep;
}

struct LiftResult {
  PadicNumber root;
  int iterations = 0;
  std::int64_t derivative_valuation = 0;  ///< v(phi'(a))
  std::int64_t residual_valuation = 0;    ///< v(phi(a))
  std::vector<std::int64_t> residual_trace;
  std::vector<std::int64_t> derivative_trace;
};

/// Lifts an approximate root a of phi (coefficients in Z_p) to a root modulo
/// p^target, provided v(phi(a)) > 2 v(phi'(a)).
inline LiftResult newton_lift(const Polynomial& phi, const PadicNumber& a, std::int64_t target) {
  const Prime p = a.prime();
  detail::require_integral(phi, p, "polynomial");
  if (a.is_nonzero() && *a.valuation() < 0) fail(ErrorCode::NotIntegral, "start point outside Z_p");
  const Rational a0 = a.to_rational();
  const Polynomial dphi = phi.derivative();
  auto exact_root = [&](const Rational& r) {
    return r.is_zero() ? PadicNumber::exact_zero(p) : PadicNumber::from_rational(r, p, std::max<std::int64_t>(target, 1));
  };
  if (phi(a0).is_zero()) return LiftResult{exact_root(a0), 0, 0, 0, {}, {}};
  const Rational d0 = dphi(a0);
  if (d0.is_zero())
    fail(ErrorCode::HenselConditionFailed, "phi'(a) = 0, so v(phi(a)) > 2 v(phi'(a)) cannot hold");
  const std::int64_t delta = vp_int(d0, p);
  const std::int64_t sigma = vp_int(phi(a0), p);
  if (sigma <= 2 * delta)
    fail(ErrorCode::HenselConditionFailed, "v(phi(a)) = " + std::to_string(sigma) + " <= 2*v(phi'(a)) = " +
                                               std::to_string(2 * delta));
  if (auto A = a.absolute_precision(); A && *A <= delta)
    fail(ErrorCode::InsufficientPrecision, "start point known modulo p^" + std::to_string(*A) +
                                               " only; the lift needs more than v(phi'(a)) = " + std::to_string(delta));
  auto F = [&](const std::vector<Rational>& x) { return std::vector<Rational>{phi(x[0])}; };
  auto J = [&](const std::vector<Rational>& x) { return Matrix<Rational>{{dphi(x[0])}}; };
  NewtonReport rep = newton_engine(F, J, {a0}, p, target);
  LiftResult out{PadicNumber::exact_zero(p), rep.iterations, delta, sigma, rep.residual_trace, rep.jacobian_trace};
  if (phi(rep.point[0]).is_zero())
    out.root = exact_root(rep.point[0]);
  else
    out.root = PadicNumber::from_residue(residue_mod(rep.point[0], p.power(target)), p, target);
  return out;
}

/// The unique root congruent to a0 modulo p, for a simple root a0 of phi mod p.
inline PadicNumber simple_root_lift(const Polynomial& phi, const Integer& a0, const Prime& p, std::int64_t target) {
  detail::require_integral(phi, p, "polynomial");
  const Integer pp = p.integer();
  const Rational r(mod(a0, pp));
  if (residue_mod(phi(r), pp) != 0)
    fail(ErrorCode::NotAResidueRoot, a0.get_str() + " is not a root of the reduction mod " + pp.get_str());
  if (residue_mod(phi.derivative()(r), pp) == 0)
    fail(ErrorCode::ResidueRootNotSimple, a0.get_str() + " is a multiple root of the reduction mod " + pp.get_str());
  return newton_lift(phi, PadicNumber::from_residue(r.num(), p, 1), target).root;
}

struct SystemResult {
  std::vector<Rational> root;
  NewtonReport report;
};

/// Newton's method for a square polynomial system with coefficients in Z_p.
inline SystemResult newton_system(const std::vector<MultiPoly>& system, const std::vector<Rational>& a,
                                  const Prime& p, std::int64_t target) {
  const std::size_t n = system.size();
  if (a.size() != n) fail(ErrorCode::PreconditionViolated, "start point dimension differs from system size");
  for (const auto& f : system) {
    if (f.nvars() != n) fail(ErrorCode::PreconditionViolated, "system is not square");
    for (const auto& [e, c] : f.terms())
      if (vp_int(c, p) < 0) fail(ErrorCode::NotIntegral, "system coefficient outside Z_p");
  }
  Matrix<MultiPoly> D(n, std::vector<MultiPoly>(n, MultiPoly(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) D[i][j] = system[i].partial(j);
  auto F = [&](const std::vector<Rational>& x) {
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = system[i].eval(x);
    return out;
  };
  auto J = [&](const std::vector<Rational>& x) {
    Matrix<Rational> m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = D[i][j].eval(x);
    return m;
  };
  NewtonReport rep = newton_engine(F, J, a, p, target);
  return {rep.point, std::move(rep)};
}

struct FactorLift {
  Polynomial psi;
  Polynomial eta;
  int iterations = 0;
  std::int64_t resultant_valuation = 0;
  std::optional<std::int64_t> defect_valuation;  ///< v(phi - psi0*eta0); none when exact
};

namespace detail {

/// Newton's method on the lower coefficients of (psi, eta). The Jacobian of
/// (u, v) -> u*eta + v*psi is a Sylvester matrix whose determinant is the
/// resultant up to sign.
inline NewtonReport factor_newton(const Polynomial& phi, const Polynomial& psi0, const Polynomial& eta0,
                                  const Prime& p, std::int64_t target) {
  const std::size_t da = static_cast<std::size_t>(psi0.degree());
  const std::size_t db = static_cast<std::size_t>(eta0.degree());
  const std::size_t n = da + db;
  auto unpack = [&](const std::vector<Rational>& x) {
    std::vector<Rational> u = psi0.coefficients();
    std::vector<Rational> v = eta0.coefficients();
    for (std::size_t i = 0; i < da; ++i) u[i] += x[i];
    for (std::size_t j = 0; j < db; ++j) v[j] += x[da + j];
    return std::pair{Polynomial(std::move(u)), Polynomial(std::move(v))};
  };
  auto F = [&](const std::vector<Rational>& x) {
    const auto [u, v] = unpack(x);
    const Polynomial d = u * v - phi;
    std::vector<Rational> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = d.coeff(k);
    return out;
  };
  auto J = [&](const std::vector<Rational>& x) {
    const auto [u, v] = unpack(x);
    Matrix<Rational> m(n, std::vector<Rational>(n));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < da && i <= k; ++i) m[k][i] = v.coeff(k - i);
      for (std::size_t j = 0; j < db && j <= k; ++j) m[k][da + j] = u.coeff(k - j);
    }
    return m;
  };
  return newton_engine(F, J, std::vector<Rational>(n), p, target);
}

inline Polynomial apply_correction(const Polynomial& base, const std::vector<Rational>& x, std::size_t offset,
                                   std::size_t count) {
  std::vector<Rational> c = base.coefficients();
  for (std::size_t i = 0; i < count; ++i) c[i] += x[offset + i];
  return Polynomial(std::move(c));
}

}  // namespace detail

/// Lifts an approximate factorisation phi ~ psi0*eta0 to one modulo p^target,
/// keeping the leading coefficients, provided
/// v(phi - psi0*eta0) > 2 v(Res(psi0, eta0)).
inline FactorLift lift_factorization(const Polynomial& phi, const Polynomial& psi0, const Polynomial& eta0,
                                     const Prime& p, std::int64_t target) {
  if (phi.is_zero() || psi0.is_zero() || eta0.is_zero()) fail(ErrorCode::ZeroPolynomial, "factor lifting of zero");
  if (phi.degree() != psi0.degree() + eta0.degree())
    fail(ErrorCode::DegreeMismatch, "deg phi = " + std::to_string(phi.degree()) + " but deg psi0 + deg eta0 = " +
                                        std::to_string(psi0.degree() + eta0.degree()));
  if (psi0.leading() * eta0.leading() != phi.leading())
    fail(ErrorCode::DegreeMismatch, "leading coefficients of psi0*eta0 and phi differ");
  detail::require_integral(phi, p, "phi");
  detail::require_integral(psi0, p, "psi0");
  detail::require_integral(eta0, p, "eta0");
  const Rational res = resultant(psi0, eta0);
  if (res.is_zero()) fail(ErrorCode::ResultantBoundViolated, "Res(psi0, eta0) = 0");
  FactorLift out;
  out.resultant_valuation = vp_int(res, p);
  const Polynomial defect = phi - psi0 * eta0;
  if (defect.is_zero()) {
    out.psi = psi0;
    out.eta = eta0;
    return out;
  }
  out.defect_valuation = *detail::min_valuation(defect, p);
  if (*out.defect_valuation <= 2 * out.resultant_valuation)
    fail(ErrorCode::ResultantBoundViolated, "v(phi - psi0*eta0) = " + std::to_string(*out.defect_valuation) +
                                                " <= 2*v(Res) = " + std::to_string(2 * out.resultant_valuation));
  const NewtonReport rep = detail::factor_newton(phi, psi0, eta0, p, target);
  const std::size_t da = static_cast<std::size_t>(psi0.degree());
  const std::size_t db = static_cast<std::size_t>(eta0.degree());
  auto reduce = [&](Polynomial f) {
    std::vector<Rational> c = f.coefficients();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = round_padic(c[i], p, target);
    return Polynomial(std::move(c));
  };
  out.psi = reduce(detail::apply_correction(psi0, rep.point, 0, da));
  out.eta = reduce(detail::apply_correction(eta0, rep.point, da, db));
  out.iterations = rep.iterations;
  return out;
}

}  // namespace nonarch

#endif  // NONARCH_HENSEL_HPP
