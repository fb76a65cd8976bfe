#ifndef NONARCH_LINALG_HPP
#define NONARCH_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/padic.hpp"
#include "nonarch/rational.hpp"
#include "nonarch/valuation.hpp"

namespace nonarch {

template <class T>
using Matrix = std::vector<std::vector<T>>;

namespace detail {

inline Integer exact_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }

inline std::int64_t capped_valuation(const Integer& x, const Prime& p, std::int64_t cap) {
  if (x == 0) return cap;
  Integer t = x;
  return std::min(cap, remove_factor(t, p));
}

}  // namespace detail

/// Determinant over an integral domain (Integer or Rational) by fraction-free
/// Bareiss elimination.
template <class T>
T bareiss_determinant(Matrix<T> a) {
  const std::size_t n = a.size();
  if (n == 0) return T(1);
  T prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == T(0)) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == T(0)) ++r;
      if (r == n) return T(0);
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T t = a[i][j] * a[k][k];
        t -= a[i][k] * a[k][j];
        a[i][j] = detail::exact_quotient(t, prev);
      }
    }
    prev = a[k][k];
  }
  T d = a[n - 1][n - 1];
  if (sign < 0) d = T(0) - d;
  return d;
}

/// Determinant modulo p^k with valuation pivoting. `valuation` is v(det)
/// when below k, and k when det vanishes modulo p^k.
struct ModDeterminant {
  Integer value;
  std::int64_t valuation;
};

inline ModDeterminant determinant_mod(Matrix<Integer> a, const Prime& p, std::int64_t k) {
  const std::size_t n = a.size();
  const Integer m = p.power(k);
  for (auto& row : a)
    for (auto& x : row) x = mod(x, m);
  Integer det = 1;
  std::int64_t total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best = j;
    std::int64_t bv = k;
    for (std::size_t i = j; i < n; ++i) {
      const std::int64_t v = detail::capped_valuation(a[i][j], p, k);
      if (v < bv) {
        bv = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (bv >= k) return {Integer(0), k};
    if (best != j) {
      std::swap(a[best], a[j]);
      det = -det;
    }
    total += bv;
    if (total >= k) return {Integer(0), k};
    const Integer pt = p.power(bv);
    const Integer uinv = inverse_mod(detail::exact_quotient(a[j][j], pt), m);
    for (std::size_t i = j + 1; i < n; ++i) {
      if (a[i][j] == 0) continue;
      const Integer f = mod(detail::exact_quotient(a[i][j], pt) * uinv, m);
      for (std::size_t l = j; l < n; ++l) a[i][l] = mod(a[i][l] - f * a[j][l], m);
    }
    det = mod(det * a[j][j], m);
  }
  return {mod(det, m), total};
}

/// Solves A x = b over Z_p for p-integral rational A, b. Elimination runs
/// modulo p^W with full pivoting on the smallest valuation; the solution is
/// returned rounded to absolute precision `out`, which is trustworthy when
/// W >= out + v(det A).
inline std::vector<Rational> solve_padic(const Matrix<Rational>& A, const std::vector<Rational>& b, const Prime& p,
                                         std::int64_t W, std::int64_t out) {
  const std::size_t n = A.size();
  const Integer m = p.power(W);
  Matrix<Integer> M(n, std::vector<Integer>(n));
  std::vector<Integer> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M[i][j] = residue_mod(A[i][j], m);
    r[i] = residue_mod(b[i], m);
  }
  std::vector<std::size_t> col(n);
  std::iota(col.begin(), col.end(), std::size_t{0});
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t bv = W;
    std::size_t bi = j, bl = j;
    for (std::size_t i = j; i < n && bv > 0; ++i)
      for (std::size_t l = j; l < n; ++l) {
        const std::int64_t v = detail::capped_valuation(M[i][l], p, W);
        if (v < bv) {
          bv = v;
          bi = i;
          bl = l;
          if (v == 0) break;
        }
      }
    if (bv >= W) fail(ErrorCode::SingularJacobian, "matrix is singular modulo p^" + std::to_string(W));
    std::swap(M[bi], M[j]);
    std::swap(r[bi], r[j]);
    if (bl != j) {
      for (auto& row : M) std::swap(row[bl], row[j]);
      std::swap(col[bl], col[j]);
    }
    const Integer pt = p.power(bv);
    const Integer uinv = inverse_mod(detail::exact_quotient(M[j][j], pt), m);
    for (std::size_t i = j + 1; i < n; ++i) {
      if (M[i][j] == 0) continue;
      const Integer f = mod(detail::exact_quotient(M[i][j], pt) * uinv, m);
      for (std::size_t l = j; l < n; ++l) M[i][l] = mod(M[i][l] - f * M[j][l], m);
      r[i] = mod(r[i] - f * r[j], m);
    }
  }
  std::vector<Rational> y(n);
  for (std::size_t j = n; j-- > 0;) {
    Rational acc(r[j]);
    for (std::size_t l = j + 1; l < n; ++l)
      if (M[j][l] != 0) acc -= Rational(M[j][l]) * y[l];
    y[j] = round_padic(acc / Rational(M[j][j]), p, W);
  }
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[col[j]] = round_padic(y[j], p, out);
  return x;
}

}  // namespace nonarch

#endif  // NONARCH_LINALG_HPP
