#ifndef NONARCH_RESULTANT_HPP
#define NONARCH_RESULTANT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/linalg.hpp"
#include "nonarch/padic.hpp"
#include "nonarch/polynomial.hpp"
#include "nonarch/rational.hpp"
#include "nonarch/residue.hpp"

namespace nonarch {

namespace detail {

template <class T>
bool is_zero_elem(const T& x, const T& zero) {
  return x == zero;
}
inline bool is_zero_elem(const PadicNumber& x, const PadicNumber&) { return !x.is_nonzero(); }

template <class T>
void check_formal_degree(const std::vector<T>& c, std::size_t deg, const T& zero, const char* name) {
  for (std::size_t i = deg + 1; i < c.size(); ++i)
    if (!is_zero_elem(c[i], zero))
      fail(ErrorCode::DegreeMismatch, std::string(name) + " has degree above its formal degree " + std::to_string(deg));
}

}  // namespace detail

/// Sylvester matrix of size p_deg + q_deg: first q_deg rows carry P's
/// coefficients (highest formal degree first), then p_deg rows carry Q's,
/// each row shifted one column to the right.
template <class T>
Matrix<T> sylvester_matrix(const std::vector<T>& P, const std::vector<T>& Q, std::size_t p_deg, std::size_t q_deg,
                           const T& zero) {
  detail::check_formal_degree(P, p_deg, zero, "P");
  detail::check_formal_degree(Q, q_deg, zero, "Q");
  const std::size_t n = p_deg + q_deg;
  Matrix<T> s(n, std::vector<T>(n, zero));
  auto coeff = [&](const std::vector<T>& c, std::size_t i) { return i < c.size() ? c[i] : zero; };
  for (std::size_t r = 0; r < q_deg; ++r)
    for (std::size_t j = 0; j <= p_deg; ++j) s[r][r + j] = coeff(P, p_deg - j);
  for (std::size_t r = 0; r < p_deg; ++r)
    for (std::size_t j = 0; j <= q_deg; ++j) s[q_deg + r][r + j] = coeff(Q, q_deg - j);
  return s;
}

inline Integer resultant(const std::vector<Integer>& P, const std::vector<Integer>& Q, std::size_t p_deg,
                         std::size_t q_deg) {
  return bareiss_determinant(sylvester_matrix(P, Q, p_deg, q_deg, Integer(0)));
}

inline Rational resultant(const Polynomial& P, const Polynomial& Q, std::size_t p_deg, std::size_t q_deg) {
  return bareiss_determinant(sylvester_matrix(P.coefficients(), Q.coefficients(), p_deg, q_deg, Rational(0)));
}

/// Resultant with the actual degrees as formal degrees.
inline Rational resultant(const Polynomial& P, const Polynomial& Q) {
  if (P.is_zero() || Q.is_zero()) fail(ErrorCode::ZeroPolynomial, "resultant of the zero polynomial");
  return resultant(P, Q, static_cast<std::size_t>(P.degree()), static_cast<std::size_t>(Q.degree()));
}

inline Residue resultant(const std::vector<Residue>& P, const std::vector<Residue>& Q, std::size_t p_deg,
                         std::size_t q_deg) {
  const Residue* any = !P.empty() ? &P.front() : (!Q.empty() ? &Q.front() : nullptr);
  if (!any) fail(ErrorCode::PreconditionViolated, "cannot infer the residue ring from empty inputs");
  const Residue zero = any->zero();
  const auto s = sylvester_matrix(P, Q, p_deg, q_deg, zero);
  Matrix<Integer> m(s.size(), std::vector<Integer>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m[i][j] = s[i][j].value();
  return Residue(determinant_mod(std::move(m), zero.prime(), zero.exponent()).value, zero.prime(), zero.exponent());
}

/// Resultant of polynomials with coefficients in Z_p, known to the smallest
/// absolute precision among the coefficients.
inline PadicNumber resultant(const std::vector<PadicNumber>& P, const std::vector<PadicNumber>& Q, std::size_t p_deg,
                             std::size_t q_deg) {
  const PadicNumber* any = !P.empty() ? &P.front() : (!Q.empty() ? &Q.front() : nullptr);
  if (!any) fail(ErrorCode::PreconditionViolated, "cannot infer the prime from empty inputs");
  const Prime p = any->prime();
  const PadicNumber zero = PadicNumber::exact_zero(p);
  std::optional<std::int64_t> a;
  for (const auto* v : {&P, &Q})
    for (const auto& c : *v) {
      if (c.is_nonzero() && *c.valuation() < 0) fail(ErrorCode::NotIntegral, "coefficient outside Z_p");
      if (auto ap = c.absolute_precision()) a = a ? std::min(*a, *ap) : *ap;
    }
  const auto s = sylvester_matrix(P, Q, p_deg, q_deg, zero);
  if (!a) {
    // Every coefficient is an exact zero.
    return s.empty() ? PadicNumber::from_rational(1, p, 1) : zero;
  }
  Matrix<Integer> m(s.size(), std::vector<Integer>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m[i][j] = s[i][j].residue();
  return PadicNumber::from_residue(determinant_mod(std::move(m), p, *a).value, p, *a);
}

/// Res_{d,d-1}(phi, phi').
inline Rational discriminant(const Polynomial& phi, std::size_t d) {
  if (d == 0) fail(ErrorCode::PreconditionViolated, "discriminant needs formal degree >= 1");
  return resultant(phi, phi.derivative(), d, d - 1);
}

}  // namespace nonarch

#endif  // NONARCH_RESULTANT_HPP
