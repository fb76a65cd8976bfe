#ifndef NONARCH_NEWTON_POLYTOPE_HPP
#define NONARCH_NEWTON_POLYTOPE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/multipoly.hpp"
#include "nonarch/rational.hpp"
#include "nonarch/valuation.hpp"

namespace nonarch {

struct Point2 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
  friend auto operator<=>(const Point2&, const Point2&) = default;
  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
};

inline std::int64_t cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

/// Convex lattice polygon, counterclockwise from its lowest (then leftmost)
/// vertex, with no collinear vertices. A segment has two vertices and a
/// point one.
struct LatticePolygon {
  std::vector<Point2> vertices;
  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;
};

namespace detail {

inline bool lower_left(Point2 a, Point2 b) { return a.y < b.y || (a.y == b.y && a.x < b.x); }

inline LatticePolygon canonical(std::vector<Point2> v) {
  if (v.empty()) return {};
  const auto it = std::min_element(v.begin(), v.end(), lower_left);
  std::rotate(v.begin(), it, v.end());
  return {std::move(v)};
}

/// Half-plane index for angular sorting from the positive x direction.
inline int half(Point2 v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; }

inline bool angle_less(Point2 a, Point2 b) {
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

inline bool same_direction(Point2 a, Point2 b) { return cross(a, b) == 0 && a.x * b.x + a.y * b.y > 0; }

/// Edge vectors of a canonical polygon, in counterclockwise order.
inline std::vector<Point2> edges(const LatticePolygon& P) {
  std::vector<Point2> e;
  const auto& v = P.vertices;
  if (v.size() < 2) return e;
  for (std::size_t i = 0; i < v.size(); ++i) e.push_back(v[(i + 1) % v.size()] - v[i]);
  return e;
}

/// Walks angularly sorted edge vectors from `start`, merging parallel ones.
inline LatticePolygon walk(Point2 start, const std::vector<Point2>& sorted_edges) {
  std::vector<Point2> merged;
  for (const auto& e : sorted_edges) {
    if (!merged.empty() && same_direction(merged.back(), e))
      merged.back() = merged.back() + e;
    else
      merged.push_back(e);
  }
  std::vector<Point2> v{start};
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) v.push_back(v.back() + merged[i]);
  return canonical(std::move(v));
}

}  // namespace detail

/// Convex hull by Andrew's monotone chain.
inline LatticePolygon convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 1) return {pts};
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& q : pts) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], q - h[k - 2]) <= 0) --k;
    h[k++] = q;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return detail::canonical(std::move(h));
}

inline std::set<Exponent> support(const MultiPoly& f) { return f.support(); }

/// Newton polytope of a bivariate polynomial; the first variable is the
/// horizontal axis.
inline LatticePolygon polytope2(const MultiPoly& f) {
  if (f.nvars() != 2) fail(ErrorCode::PreconditionViolated, "polytope2 needs exactly two variables");
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "Newton polytope of the zero polynomial");
  std::vector<Point2> pts;
  for (const auto& [e, c] : f.terms()) pts.push_back({e[0], e[1]});
  return convex_hull(std::move(pts));
}

/// Minkowski sum by merging the angularly sorted edge sequences.
inline LatticePolygon minkowski_sum(const LatticePolygon& P, const LatticePolygon& Q) {
  if (P.vertices.empty() || Q.vertices.empty()) return {};
  auto e = detail::edges(P);
  const auto f = detail::edges(Q);
  e.insert(e.end(), f.begin(), f.end());
  std::stable_sort(e.begin(), e.end(), detail::angle_less);
  return detail::walk(P.vertices.front() + Q.vertices.front(), e);
}

/// min over the support of v(a_m) + <m, s>.
inline ExtRational gauss_norm_multi(const MultiPoly& f, const Place& place, const std::vector<Rational>& s) {
  if (s.size() != f.nvars()) fail(ErrorCode::PreconditionViolated, "radius vector dimension mismatch");
  ExtRational best = ExtRational::infinity();
  for (const auto& [e, c] : f.terms()) {
    Rational val = valuation_at(c, place).value();
    for (std::size_t i = 0; i < e.size(); ++i) val += Rational(static_cast<unsigned long>(e[i])) * s[i];
    best = min(best, ExtRational(val));
  }
  return best;
}

struct TropicalValue {
  Rational value;
  bool unique = false;
  std::vector<Exponent> active;  ///< terms attaining the maximum
};

/// max over the support of <m, x> - v(a_m), with the terms attaining it.
inline TropicalValue tropical_eval_multi(const MultiPoly& f, const Place& place, const std::vector<Rational>& x) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "tropical evaluation of the zero polynomial");
  if (x.size() != f.nvars()) fail(ErrorCode::PreconditionViolated, "point dimension mismatch");
  std::optional<Rational> best;
  std::vector<Exponent> active;
  for (const auto& [e, c] : f.terms()) {
    Rational val = -valuation_at(c, place).value();
    for (std::size_t i = 0; i < e.size(); ++i) val += Rational(static_cast<unsigned long>(e[i])) * x[i];
    if (!best || val > *best) {
      best = val;
      active.assign(1, e);
    } else if (val == *best) {
      active.push_back(e);
    }
  }
  return {*best, active.size() == 1, std::move(active)};
}

enum class Decomposability { Indecomposable, Decomposable, Unknown };

struct DecompositionHint {
  Decomposability kind = Decomposability::Unknown;
  std::size_t primitive_edges = 0;
  std::optional<std::pair<LatticePolygon, LatticePolygon>> witness;
};

/// Searches the multiset of primitive edge vectors for a nonempty proper
/// sub-multiset summing to zero; such a subset exists exactly when P is a
/// Minkowski sum of two lattice polygons that are not points.
inline DecompositionHint indecomposable_hint(const LatticePolygon& P, std::size_t guard = 12) {
  if (P.vertices.size() < 2) fail(ErrorCode::PreconditionViolated, "decomposition needs at least two vertices");
  std::vector<Point2> prim;
  for (const auto& e : detail::edges(P)) {
    const std::int64_t g = std::gcd(e.x < 0 ? -e.x : e.x, e.y < 0 ? -e.y : e.y);
    for (std::int64_t i = 0; i < g; ++i) prim.push_back({e.x / g, e.y / g});
  }
  DecompositionHint hint;
  hint.primitive_edges = prim.size();
  if (prim.size() > guard) return hint;
  const std::size_t n = prim.size();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    Point2 s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s = s + prim[i];
    if (s.x != 0 || s.y != 0) continue;
    std::vector<Point2> a, b;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? a : b).push_back(prim[i]);
    hint.kind = Decomposability::Decomposable;
    hint.witness = std::pair{detail::walk({0, 0}, a), detail::walk(P.vertices.front(), b)};
    return hint;
  }
  hint.kind = Decomposability::Indecomposable;
  return hint;
}

}  // namespace nonarch

#endif  // NONARCH_NEWTON_POLYTOPE_HPP
