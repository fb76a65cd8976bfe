#include <gtest/gtest.h>

#include <set>

#include "nonarch/newton_polytope.hpp"
#include "support.hpp"

using namespace nonarch;
using testsupport::Gen;

namespace {

MultiPoly M2(std::initializer_list<std::tuple<unsigned, unsigned, long>> terms) {
  MultiPoly f(2);
  for (const auto& [i, j, c] : terms) f.add_term({i, j}, Rational(c));
  return f;
}

/// Newton's example y^6 - 5 x y^5 + x^3 y^4 - 7 x^2 y^2 + 6 x^3 + x^4 with
/// a = b = 1, exponents written as (power of y, power of x).
MultiPoly newton_example() {
  return M2({{6, 0, 1}, {5, 1, -5}, {4, 3, 1}, {2, 2, -7}, {0, 3, 6}, {0, 4, 1}});
}

std::set<Point2> vertex_set(const LatticePolygon& P) { return {P.vertices.begin(), P.vertices.end()}; }

bool on_segment(Point2 q, Point2 a, Point2 b) {
  if (cross(b - a, q - a) != 0) return false;
  return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
         q.y <= std::max(a.y, b.y);
}

bool in_triangle(Point2 q, Point2 a, Point2 b, Point2 c) {
  const auto s1 = cross(b - a, q - a), s2 = cross(c - b, q - b), s3 = cross(a - c, q - c);
  const bool neg = s1 < 0 || s2 < 0 || s3 < 0, pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(neg && pos);
}

/// Extreme points by brute force: q is a vertex unless it lies on a segment
/// or in a triangle spanned by other points.
std::set<Point2> extreme_points(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::set<Point2> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool inside = false;
    for (std::size_t a = 0; a < pts.size() && !inside; ++a)
      for (std::size_t b = a + 1; b < pts.size() && !inside; ++b) {
        if (a == i || b == i) continue;
        inside = on_segment(pts[i], pts[a], pts[b]);
        for (std::size_t c = b + 1; c < pts.size() && !inside; ++c)
          if (c != i && cross(pts[b] - pts[a], pts[c] - pts[a]) != 0)
            inside = in_triangle(pts[i], pts[a], pts[b], pts[c]);
      }
    if (!inside) out.insert(pts[i]);
  }
  return out;
}

bool is_canonical(const LatticePolygon& P) {
  const auto& v = P.vertices;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i].y < v[0].y || (v[i].y == v[0].y && v[i].x < v[0].x)) return false;
  if (v.size() < 3) return true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i], b = v[(i + 1) % v.size()], c = v[(i + 2) % v.size()];
    if (cross(b - a, c - b) <= 0) return false;
  }
  return true;
}

}  // namespace

TEST(Support, Examples) {
  EXPECT_TRUE(support(MultiPoly(2)).empty());
  EXPECT_EQ(support(M2({{0, 0, 1}, {1, 1, 1}, {2, 2, 1}})), (std::set<Exponent>{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(support(M2({{1, 0, 1}, {0, 1, 2}, {0, 0, -3}})), (std::set<Exponent>{{1, 0}, {0, 1}, {0, 0}}));
}

TEST(Polytope, Examples) {
  EXPECT_EQ(polytope2(M2({{0, 0, 1}, {1, 1, 1}, {2, 2, 1}})).vertices, (std::vector<Point2>{{0, 0}, {2, 2}}));
  EXPECT_EQ(polytope2(M2({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}})).vertices, (std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(polytope2(M2({{3, 4, 2}})).vertices, (std::vector<Point2>{{3, 4}}));
}

TEST(Polytope, NewtonsExampleHasTheFigureEdge) {
  const auto P = polytope2(newton_example());
  const auto& v = P.vertices;
  bool found = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i], b = v[(i + 1) % v.size()];
    found = found || (a == Point2{6, 0} && b == Point2{0, 3}) || (a == Point2{0, 3} && b == Point2{6, 0});
  }
  EXPECT_TRUE(found);
  // (2, 2) lies on that edge, so it is not a vertex.
  EXPECT_EQ(vertex_set(P).count({2, 2}), 0u);
}

TEST(Polytope, Errors) {
  MultiPoly three(3);
  three.add_term({1, 0, 0}, Rational(1));
  EXPECT_THROW(polytope2(three), Error);
  EXPECT_THROW(polytope2(MultiPoly(2)), Error);
}

TEST(ConvexHull, PropertyMatchesBruteForce) {
  Gen g(71);
  for (int t = 0; t < 500; ++t) {
    std::vector<Point2> pts(static_cast<std::size_t>(g.range(1, 14)));
    for (auto& q : pts) q = {g.range(-5, 5), g.range(-5, 5)};
    const auto H = convex_hull(pts);
    EXPECT_EQ(vertex_set(H), extreme_points(pts));
    EXPECT_TRUE(is_canonical(H));
  }
}

TEST(Minkowski, Examples) {
  const LatticePolygon tri{{{0, 0}, {1, 0}, {0, 1}}};
  EXPECT_EQ(minkowski_sum(tri, LatticePolygon{{{2, 3}}}).vertices, (std::vector<Point2>{{2, 3}, {3, 3}, {2, 4}}));
  EXPECT_EQ(minkowski_sum(LatticePolygon{{{0, 0}, {1, 0}}}, LatticePolygon{{{0, 0}, {0, 1}}}).vertices,
            (std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  EXPECT_EQ(minkowski_sum(tri, tri).vertices, (std::vector<Point2>{{0, 0}, {2, 0}, {0, 2}}));
  EXPECT_EQ(minkowski_sum(LatticePolygon{{{0, 0}, {1, 1}}}, LatticePolygon{{{0, 0}, {2, 2}}}).vertices,
            (std::vector<Point2>{{0, 0}, {3, 3}}));
}

// Edge merging agrees with the hull of all pairwise vertex sums.
TEST(Minkowski, PropertyMatchesPointwiseSums) {
  Gen g(72);
  for (int t = 0; t < 500; ++t) {
    auto rnd = [&] {
      std::vector<Point2> pts(static_cast<std::size_t>(g.range(1, 7)));
      for (auto& q : pts) q = {g.range(-4, 4), g.range(-4, 4)};
      return convex_hull(pts);
    };
    const auto A = rnd(), B = rnd();
    std::vector<Point2> sums;
    for (const auto& a : A.vertices)
      for (const auto& b : B.vertices) sums.push_back(a + b);
    const auto S = minkowski_sum(A, B);
    EXPECT_EQ(vertex_set(S), extreme_points(sums));
    EXPECT_TRUE(is_canonical(S));
  }
}

// The polytope of a product is the Minkowski sum of the polytopes.
TEST(Minkowski, PropertyProductLaw) {
  Gen g(73);
  for (int t = 0; t < 300; ++t) {
    const MultiPoly f = g.bivariate(4, 6, 9), h = g.bivariate(4, 6, 9);
    EXPECT_EQ(polytope2(f * h), minkowski_sum(polytope2(f), polytope2(h))) << f.to_string() << " * " << h.to_string();
  }
}

TEST(GaussNormMulti, Examples) {
  const auto f = M2({{0, 0, 3}, {1, 0, 1}, {0, 1, 2}});
  EXPECT_EQ(gauss_norm_multi(f, PadicPlace{Prime(2)}, {Rational(1), Rational(0)}), ExtRational(0));
  EXPECT_EQ(gauss_norm_multi(f, TrivialPlace{}, {Rational(0), Rational(0)}), ExtRational(0));
  EXPECT_TRUE(gauss_norm_multi(MultiPoly(2), TrivialPlace{}, {Rational(0), Rational(0)}).is_infinite());
  const auto a = M2({{0, 0, 1}, {1, 0, 1}}), b = M2({{0, 0, 1}, {0, 1, 1}});
  EXPECT_EQ(gauss_norm_multi(a * b, PadicPlace{Prime(2)}, {Rational(1), Rational(1)}), ExtRational(0));
}

TEST(GaussNormMulti, PropertyMultiplicative) {
  Gen g(74);
  for (int t = 0; t < 500; ++t) {
    const MultiPoly f = g.bivariate(3, 5, 40), h = g.bivariate(3, 5, 40);
    const std::vector<Rational> s{Rational(Integer(g.range(-3, 3)), Integer(g.range(1, 3))),
                                  Rational(Integer(g.range(-3, 3)), Integer(g.range(1, 3)))};
    const Place place = g.coin() ? Place(TrivialPlace{}) : Place(PadicPlace{Prime(g.small_prime())});
    EXPECT_EQ(gauss_norm_multi(f * h, place, s), gauss_norm_multi(f, place, s) + gauss_norm_multi(h, place, s))
        << f.to_string() << " * " << h.to_string();
  }
}

// A polynomial in one variable, seen as a MultiPoly, has the same norm as
// its univariate Gauss norm.
TEST(GaussNormMulti, AgreesWithUnivariate) {
  Gen g(75);
  for (int t = 0; t < 200; ++t) {
    const Prime p(g.small_prime());
    const Polynomial u = g.poly(6, 50);
    MultiPoly f(1);
    for (std::size_t n = 0; n < u.coefficients().size(); ++n)
      if (!u.coefficients()[n].is_zero()) f.add_term({static_cast<unsigned>(n)}, u.coefficients()[n]);
    const Rational s(Integer(g.range(-4, 4)), Integer(g.range(1, 3)));
    EXPECT_EQ(gauss_norm_multi(f, PadicPlace{p}, {s}), gauss_norm_v(u.coefficients(), p, s).w);
  }
}

TEST(TropicalMulti, Examples) {
  const auto r = tropical_eval_multi(M2({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}}), TrivialPlace{}, {Rational(1), Rational(2)});
  EXPECT_EQ(r.value, Rational(2));
  EXPECT_TRUE(r.unique);
  const auto s = tropical_eval_multi(M2({{0, 0, 1}, {1, 0, 1}}), TrivialPlace{}, {Rational(0), Rational(0)});
  EXPECT_EQ(s.value, Rational(0));
  EXPECT_FALSE(s.unique);
  EXPECT_EQ(s.active.size(), 2u);
}

TEST(TropicalMulti, NewtonsExampleOnTheEdgeNormal) {
  // The edge (6,0)-(0,3) has inner normal (1,2); probing along -(1,2)
  // activates every monomial on that edge.
  const auto r = tropical_eval_multi(newton_example(), TrivialPlace{}, {Rational(-1), Rational(-2)});
  EXPECT_EQ(r.value, Rational(-6));
  EXPECT_EQ(std::set<Exponent>(r.active.begin(), r.active.end()), (std::set<Exponent>{{6, 0}, {2, 2}, {0, 3}}));
  // Slightly off the normal only one endpoint survives.
  const auto q = tropical_eval_multi(newton_example(), TrivialPlace{}, {Rational(-1), Rational::parse("-21/10")});
  EXPECT_TRUE(q.unique);
  EXPECT_EQ(q.active.front(), (Exponent{6, 0}));
}

TEST(TropicalMulti, PropertyMaxOverTerms) {
  Gen g(76);
  for (int t = 0; t < 300; ++t) {
    const MultiPoly f = g.bivariate(4, 6, 30);
    const Prime p(g.small_prime());
    const std::vector<Rational> x{g.rational(5), g.rational(5)};
    const auto r = tropical_eval_multi(f, PadicPlace{p}, x);
    std::size_t attained = 0;
    for (const auto& [e, c] : f.terms()) {
      const Rational val = Rational(static_cast<long>(e[0])) * x[0] + Rational(static_cast<long>(e[1])) * x[1] -
                           Rational(testsupport::vp_by_division(c, p.value()));
      EXPECT_LE(val, r.value);
      attained += val == r.value;
    }
    EXPECT_EQ(attained, r.active.size());
    EXPECT_EQ(r.unique, attained == 1);
  }
}

TEST(Hint, Examples) {
  EXPECT_EQ(indecomposable_hint(LatticePolygon{{{0, 0}, {1, 1}}}).kind, Decomposability::Indecomposable);
  const auto seg = indecomposable_hint(LatticePolygon{{{0, 0}, {2, 2}}});
  EXPECT_EQ(seg.kind, Decomposability::Decomposable);
  ASSERT_TRUE(seg.witness);
  EXPECT_EQ(minkowski_sum(seg.witness->first, seg.witness->second), (LatticePolygon{{{0, 0}, {2, 2}}}));
  EXPECT_EQ(indecomposable_hint(LatticePolygon{{{0, 0}, {1, 0}, {0, 1}}}).kind, Decomposability::Indecomposable);
  EXPECT_EQ(indecomposable_hint(LatticePolygon{{{0, 0}, {13, 0}}}).kind, Decomposability::Unknown);
}

// Every Minkowski sum of two non-point polygons is reported decomposable,
// with a witness that sums back to it.
TEST(Hint, PropertySumsAreDecomposable) {
  Gen g(77);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    auto rnd = [&] {
      std::vector<Point2> pts(static_cast<std::size_t>(g.range(2, 4)));
      for (auto& q : pts) q = {g.range(-2, 2), g.range(-2, 2)};
      return convex_hull(pts);
    };
    const auto A = rnd(), B = rnd();
    if (A.vertices.size() < 2 || B.vertices.size() < 2) continue;
    const auto S = minkowski_sum(A, B);
    const auto h = indecomposable_hint(S);
    if (h.kind == Decomposability::Unknown) continue;
    ++checked;
    ASSERT_EQ(h.kind, Decomposability::Decomposable);
    ASSERT_TRUE(h.witness);
    EXPECT_EQ(minkowski_sum(h.witness->first, h.witness->second), S);
  }
  EXPECT_GT(checked, 100);
}
