#ifndef NONARCH_NEWTON_POLYGON_HPP
#define NONARCH_NEWTON_POLYGON_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/polynomial.hpp"
#include "nonarch/rational.hpp"
#include "nonarch/valuation.hpp"

namespace nonarch {

struct PolygonVertex {
  std::int64_t m;
  Rational v;
  friend bool operator==(const PolygonVertex&, const PolygonVertex&) = default;
};

struct PolygonSegment {
  Rational slope;
  std::int64_t length;
  friend bool operator==(const PolygonSegment&, const PolygonSegment&) = default;
};

/// Lower convex hull of the points (m, v(c_m)), in the original indices.
/// `ord` is the T-adic order that was factored out before taking the hull.
struct NewtonPolygon {
  std::int64_t ord = 0;
  std::vector<PolygonVertex> vertices;
  std::vector<PolygonSegment> segments;
};

/// Lower hull of points with strictly increasing abscissae; collinear
/// interior points are dropped.
inline NewtonPolygon lower_hull(const std::vector<PolygonVertex>& pts) {
  if (pts.empty()) fail(ErrorCode::ZeroPolynomial, "Newton polygon of the zero polynomial");
  std::vector<PolygonVertex> h;
  for (const auto& q : pts) {
    while (h.size() >= 2) {
      const auto& a = h[h.size() - 2];
      const auto& b = h.back();
      // Drop b unless the turn a -> b -> q is strictly convex from below.
      const Rational cross = Rational(static_cast<long>(b.m - a.m)) * (q.v - a.v) -
                             (b.v - a.v) * Rational(static_cast<long>(q.m - a.m));
      if (cross.sign() > 0) break;
      h.pop_back();
    }
    h.push_back(q);
  }
  NewtonPolygon ng;
  ng.ord = pts.front().m;
  ng.vertices = h;
  for (std::size_t i = 1; i < h.size(); ++i) {
    const std::int64_t len = h[i].m - h[i - 1].m;
    ng.segments.push_back({(h[i].v - h[i - 1].v) / Rational(static_cast<long>(len)), len});
  }
  return ng;
}

/// The points (m, v(c_m)) for the nonzero coefficients.
inline std::vector<PolygonVertex> valued_points(const Polynomial& phi, const Place& place) {
  std::vector<PolygonVertex> pts;
  const auto& c = phi.coefficients();
  for (std::size_t m = 0; m < c.size(); ++m)
    if (!c[m].is_zero()) pts.push_back({static_cast<std::int64_t>(m), valuation_at(c[m], place).value()});
  return pts;
}

inline NewtonPolygon newton_polygon(const Polynomial& phi, const Place& place) {
  return lower_hull(valued_points(phi, place));
}
inline NewtonPolygon newton_polygon(const Polynomial& phi, const Prime& p) { return newton_polygon(phi, PadicPlace{p}); }

struct RootValuation {
  Rational valuation;
  std::int64_t multiplicity;
  friend bool operator==(const RootValuation&, const RootValuation&) = default;
};

/// Each segment of slope l and length k gives k roots of valuation -l.
inline std::vector<RootValuation> root_valuations(const NewtonPolygon& ng) {
  if (ng.ord != 0) fail(ErrorCode::PreconditionViolated, "root valuations need c_0 != 0; divide out T^ord first");
  std::vector<RootValuation> out;
  for (const auto& s : ng.segments) out.push_back({-s.slope, s.length});
  return out;
}

/// Value of the polygon at abscissa t; +inf outside [m_0, m_k].
inline ExtRational legendre_dual(const NewtonPolygon& ng, const Rational& t) {
  if (ng.vertices.empty()) return ExtRational::infinity();
  const Rational lo(static_cast<long>(ng.vertices.front().m));
  const Rational hi(static_cast<long>(ng.vertices.back().m));
  if (t < lo || t > hi) return ExtRational::infinity();
  for (std::size_t i = 1; i < ng.vertices.size(); ++i) {
    const Rational b(static_cast<long>(ng.vertices[i].m));
    if (t <= b) {
      const Rational a(static_cast<long>(ng.vertices[i - 1].m));
      return ExtRational(ng.vertices[i - 1].v + ng.segments[i - 1].slope * (t - a));
    }
  }
  return ExtRational(ng.vertices.front().v);
}

/// max_m (m*x - v(c_m)).
inline Rational tropical_eval(const Polynomial& phi, const Place& place, const Rational& x) {
  const auto pts = valued_points(phi, place);
  if (pts.empty()) fail(ErrorCode::ZeroPolynomial, "tropical evaluation of the zero polynomial");
  std::optional<Rational> best;
  for (const auto& q : pts) {
    const Rational val = Rational(static_cast<long>(q.m)) * x - q.v;
    if (!best || val > *best) best = val;
  }
  return *best;
}

/// Outcome of the single-slope irreducibility test: either a proof naming
/// (r, d) with gcd(r, d) = 1, or no conclusion.
struct SlopeCertificate {
  bool irreducible = false;
  std::int64_t r = 0;
  std::int64_t d = 0;
};

namespace detail {

inline void require_monic(const Polynomial& phi) {
  if (phi.is_zero()) fail(ErrorCode::ZeroPolynomial, "zero polynomial");
  if (!phi.is_monic()) fail(ErrorCode::NotMonic, "polynomial is not monic");
}

}  // namespace detail

inline SlopeCertificate pure_slope_irreducible(const Polynomial& phi, const Prime& p) {
  detail::require_monic(phi);
  if (phi.coeff(0).is_zero()) fail(ErrorCode::PreconditionViolated, "constant coefficient is zero");
  const NewtonPolygon ng = newton_polygon(phi, p);
  const std::int64_t d = phi.degree();
  if (ng.segments.size() != 1 || ng.segments.front().length != d) return {};
  const std::int64_t r = vp_int(phi.coeff(0), p);
  const Integer g = gcd(Integer(static_cast<long>(r < 0 ? -r : r)), Integer(static_cast<long>(d)));
  if (g != 1) return {};
  return {true, r, d};
}

inline bool eisenstein_check(const Polynomial& phi, const Prime& p) {
  detail::require_monic(phi);
  const auto& c = phi.coefficients();
  if (c.front().is_zero() || vp_int(c.front(), p) != 1) return false;
  for (std::size_t i = 1; i + 1 < c.size(); ++i)
    if (!c[i].is_zero() && vp_int(c[i], p) < 1) return false;
  return phi.degree() >= 1;
}

/// v(root) = v(c_0)/d for a root of a monic irreducible polynomial of degree d.
/// Irreducibility is the caller's responsibility.
inline ExtRational extension_valuation(const Polynomial& minpoly, const Prime& p) {
  detail::require_monic(minpoly);
  if (minpoly.degree() < 1) fail(ErrorCode::PreconditionViolated, "minimal polynomial of degree 0");
  const ExtRational v0 = vp(minpoly.coeff(0), p);
  if (v0.is_infinite()) return v0;
  return ExtRational(v0.value() / Rational(minpoly.degree()));
}

struct ColemanPrimeReport {
  std::uint64_t p;
  NewtonPolygon polygon;
  std::vector<std::int64_t> slope_exponents;  ///< m_i with slope denominator p^{m_i}
  Integer bound;                              ///< p^{v_p(n)}
};

struct ColemanReport {
  Integer bound;
  bool irreducible = false;
  std::vector<ColemanPrimeReport> per_prime;
};

/// Points (k, v_p(1/k!)) of the truncated exponential sum_{k<=n} T^k/k!.
inline std::vector<PolygonVertex> exp_truncation_points(std::uint64_t n, const Prime& p) {
  std::vector<PolygonVertex> pts;
  for (std::uint64_t k = 0; k <= n; ++k)
    pts.push_back({static_cast<std::int64_t>(k), Rational(-static_cast<long>(vp_factorial(k, p)))});
  return pts;
}

/// Lower bound on the degree of any factor over Q of sum_{k<=n} T^k/k!,
/// from the slopes of its p-adic polygons; equals n when irreducibility is
/// certified.
inline ColemanReport coleman_degree_bound(std::uint64_t n, const std::vector<std::uint64_t>& primes) {
  if (n == 0) fail(ErrorCode::PreconditionViolated, "the truncated exponential needs n >= 1");
  for (const auto& [q, e] : factor_trial(Integer(static_cast<unsigned long>(n)), Integer(1000000))) {
    bool listed = false;
    for (auto p : primes) listed = listed || Integer(static_cast<unsigned long>(p)) == q;
    if (!listed) fail(ErrorCode::MissingPrimeDivisor, "prime divisor " + q.get_str() + " of n is not listed");
  }
  ColemanReport rep;
  rep.bound = 1;
  for (auto pv : primes) {
    const Prime p(pv);
    ColemanPrimeReport pr{pv, lower_hull(exp_truncation_points(n, p)), {}, Integer(0)};
    for (const auto& s : pr.polygon.segments) {
      Integer den = s.slope.den();
      const std::int64_t m = remove_factor(den, p);
      if (den != 1) fail(ErrorCode::PreconditionViolated, "slope denominator is not a power of p");
      const Integer pm = p.power(m);
      const Rational expected = -Rational(pm - 1, pm * (p.integer() - 1));
      if (s.slope != expected)
        fail(ErrorCode::PreconditionViolated, "slope " + s.slope.to_string() + " differs from the predicted value");
      pr.slope_exponents.push_back(m);
      if (pr.bound == 0 || pm < pr.bound) pr.bound = pm;
    }
    if (pr.bound == 0) pr.bound = 1;
    rep.bound *= pr.bound;
    rep.per_prime.push_back(std::move(pr));
  }
  rep.irreducible = rep.bound == Integer(static_cast<unsigned long>(n));
  return rep;
}

}  // namespace nonarch

#endif  // NONARCH_NEWTON_POLYGON_HPP
