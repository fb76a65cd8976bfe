// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every comparison is exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "nonarch/nonarch.hpp"
#include "support.hpp"

using namespace nonarch;
using testsupport::Gen;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

/// Records the first failure with a message; later checks still run.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    ++count_;
    if (!cond && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }
  Outcome done(const std::string& summary) {
    if (out_.ok) out_.detail = summary + " (" + std::to_string(count_) + " checks)";
    return out_;
  }

 private:
  Outcome out_;
  std::size_t count_ = 0;
};

Polynomial P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(std::move(v));
}

std::vector<std::int64_t> abscissae(const NewtonPolygon& ng) {
  std::vector<std::int64_t> xs;
  for (const auto& v : ng.vertices) xs.push_back(v.m);
  return xs;
}

// 1 -------------------------------------------------------------------------
Outcome figure_two() {
  Check c;
  const auto ng = series_polygon(exp_truncated(30, Prime(2)));
  c.expect(abscissae(ng) == std::vector<std::int64_t>{0, 16, 24, 28, 30}, "vertex abscissae");
  const std::vector<Rational> slopes{Rational::parse("-15/16"), Rational::parse("-7/8"), Rational::parse("-3/4"),
                                     Rational::parse("-1/2")};
  std::vector<Rational> got;
  for (const auto& s : ng.segments) got.push_back(s.slope);
  c.expect(got == slopes, "slopes");
  // Closed form -(p^m - 1)/(p^m (p - 1)) for the binary digits 2^4, 2^3, 2^2, 2^1.
  for (std::size_t i = 0; i < ng.segments.size(); ++i) {
    const Integer pm = Prime(2).power(4 - static_cast<std::int64_t>(i));
    c.expect(ng.segments[i].slope == -Rational(pm - 1, pm), "slope formula");
    c.expect(ng.segments[i].length == pm.get_si(), "segment length");
  }
  return c.done("vertices 0,16,24,28,30");
}

// 2 -------------------------------------------------------------------------
Outcome legendre_formula() {
  Check c;
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const Prime P(p);
    for (std::uint64_t n = 0; n <= 10000; ++n)
      c.expect(vp_factorial(n, P) == testsupport::legendre_floor_sum(n, p),
               "v_" + std::to_string(p) + "(" + std::to_string(n) + "!)");
    // The digit-sum closed form (n - s_p(n))/(p - 1) as a second witness.
    for (std::uint64_t n = 0; n <= 10000; n += 97)
      c.expect(vp_factorial(n, P) * (p - 1) == n - digit_sum_base_p(n, P), "digit-sum form");
  }
  return c.done("n <= 10^4, p in {2,3,5,7}");
}

// 3 -------------------------------------------------------------------------
Outcome hensel_sqrt_two() {
  Check c;
  const Prime p(7);
  const auto r = newton_lift(P({-2, 0, 1}), PadicNumber::from_residue(3, p, 1), 20);
  const Integer x = r.root.residue();
  c.expect(*r.root.absolute_precision() == 20, "precision 7^20");
  c.expect(r.iterations <= 7, "iterations " + std::to_string(r.iterations));
  for (std::int64_t k = 1; k <= 5; ++k) {
    // Exhaustive stepwise lift: every t with t = 3 mod 7 and t^2 = 2 mod 7^k.
    const Integer m = p.power(k);
    std::vector<Integer> sols;
    for (Integer t = 3; t < m; t += 7)
      if (mod(t * t - 2, m) == 0) sols.push_back(t);
    c.expect(sols.size() == 1 && sols[0] == mod(x, m), "exhaustive lift mod 7^" + std::to_string(k));
  }
  for (std::int64_t k = 6; k <= 20; ++k) c.expect(mod(x * x - 2, p.power(k)) == 0, "square check mod 7^" + std::to_string(k));
  return c.done(std::to_string(r.iterations) + " iterations");
}

// 4 -------------------------------------------------------------------------
Outcome teichmuller_group() {
  Check c;
  for (std::uint64_t pv : {5, 7}) {
    const Prime p(pv);
    const Integer m = p.power(50);
    std::map<std::uint64_t, Integer> theta;
    for (std::uint64_t u = 1; u < pv; ++u) {
      theta[u] = teichmuller(Integer(static_cast<unsigned long>(u)), p, 50).residue();
      c.expect(pow_mod(theta[u], Integer(static_cast<unsigned long>(pv - 1)), m) == 1, "theta^(p-1) = 1");
      c.expect(mod(theta[u] - static_cast<unsigned long>(u), p.integer()) == 0, "theta = u mod p");
    }
    for (std::uint64_t u = 1; u < pv; ++u)
      for (std::uint64_t v = 1; v < pv; ++v)
        c.expect(mod(theta[u] * theta[v] - theta[(u * v) % pv], m) == 0, "theta_u theta_v = theta_uv");
  }
  return c.done("p in {5,7} modulo p^50");
}

// 5 -------------------------------------------------------------------------
Outcome gauss_multiplicativity() {
  Check c;
  Gen g(1005);
  for (int t = 0; t < 1000; ++t) {
    const Rational s(Integer(g.range(-4, 6)), Integer(g.range(1, 3)));
    switch (t % 3) {
      case 0: {
        const Prime p(g.small_prime());
        const Polynomial a = g.poly(6, 500), b = g.poly(6, 500);
        c.expect(gauss_norm_v((a * b).coefficients(), p, s).w ==
                     gauss_norm_v(a.coefficients(), p, s).w + gauss_norm_v(b.coefficients(), p, s).w,
                 "univariate " + a.to_string() + " * " + b.to_string());
        break;
      }
      default: {
        const MultiPoly a = g.bivariate(4, 6, 200), b = g.bivariate(4, 6, 200);
        const std::vector<Rational> ss{s, Rational(Integer(g.range(-4, 6)), Integer(g.range(1, 3)))};
        const Place place = t % 3 == 1 ? Place(TrivialPlace{}) : Place(PadicPlace{Prime(g.small_prime())});
        c.expect(gauss_norm_multi(a * b, place, ss) == gauss_norm_multi(a, place, ss) + gauss_norm_multi(b, place, ss),
                 "bivariate " + a.to_string() + " * " + b.to_string());
      }
    }
  }
  return c.done("1000 pairs");
}

// 6 -------------------------------------------------------------------------
Outcome irreducibility_certificates() {
  Check c;
  for (std::uint64_t pv : {3, 5, 7, 11}) {
    const Prime p(pv);
    // Phi_p(T+1) = ((T+1)^p - 1)/T = sum_k C(p, k+1) T^k.
    std::vector<Rational> co(pv);
    Integer binom = 1;
    for (std::uint64_t k = 1; k <= pv; ++k) {
      binom = binom * static_cast<unsigned long>(pv - k + 1) / static_cast<unsigned long>(k);
      co[k - 1] = Rational(binom);
    }
    const Polynomial phi(co);
    c.expect(eisenstein_check(phi, p), "Eisenstein at " + std::to_string(pv));
    const auto cert = pure_slope_irreducible(phi, p);
    c.expect(cert.irreducible && cert.r == 1 && cert.d == static_cast<std::int64_t>(pv - 1),
             "single slope at " + std::to_string(pv));
  }
  for (std::uint64_t pv : {2, 3, 5, 7, 11, 13, 101}) {
    const Prime p(pv);
    const Polynomial f({Rational(-(p.integer() * p.integer())), Rational(0), Rational(1)});
    c.expect(!eisenstein_check(f, p), "T^2 - p^2 Eisenstein");
    c.expect(!pure_slope_irreducible(f, p).irreducible, "T^2 - p^2 single slope");
  }
  return c.done("Phi_p(T+1) certified, T^2 - p^2 never");
}

// 7 -------------------------------------------------------------------------
Outcome slope_factorization_criterion() {
  Check c;
  Gen g(1007);
  for (int t = 0; t < 100; ++t) {
    const Prime p(g.pick(std::vector<std::uint64_t>{2, 3, 5, 7}));
    const std::size_t n = static_cast<std::size_t>(g.range(2, 5));
    std::vector<Rational> roots;
    std::multiset<Rational> expect;
    std::set<std::int64_t> profile;
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t e = g.range(-1, 4);
      roots.push_back(g.p_scaled(p, e, e, 40));
      expect.insert(Rational(e));
      profile.insert(e);
    }
    if (profile.size() < 2) {
      // Force two distinct valuations.
      const std::int64_t e = *profile.begin() + 1;
      roots.back() = g.p_scaled(p, e, e, 40);
      expect.erase(expect.find(Rational(*profile.begin())));
      expect.insert(Rational(e));
    }
    const Polynomial phi = testsupport::from_roots(roots);
    const auto factors = slope_factorization(phi, p, 10);
    std::multiset<Rational> got;
    Polynomial prod = Polynomial::constant(1);
    for (const auto& f : factors) {
      for (long k = 0; k < f.factor.degree(); ++k) got.insert(-f.slope);
      prod = prod * f.factor;
    }
    c.expect(got == expect, "slope multiset for " + phi.to_string());
    const Polynomial d = prod - phi;
    c.expect(d.is_zero() || testsupport::min_vp(d, p.value()) >= 10, "product mod p^10 for " + phi.to_string());
  }
  return c.done("100 products");
}

// 8 -------------------------------------------------------------------------
Outcome coleman() {
  Check c;
  const auto rep = coleman_degree_bound(30, {2, 3, 5});
  c.expect(rep.bound == 30, "bound " + rep.bound.get_str());
  c.expect(rep.irreducible, "irreducibility certified");
  return c.done("bound 30");
}

// 9 -------------------------------------------------------------------------
Outcome weierstrass_criterion() {
  Check c;
  Gen g(1009);
  const Prime p(5);
  const std::int64_t budget = 20;
  for (int t = 0; t < 50; ++t) {
    // Restricted on the unit disc: v(c_n) grows with n, and some index
    // below 8 is a unit so N stays small.
    std::vector<Rational> co(41);
    for (std::size_t n = 0; n <= 40; ++n) {
      const std::int64_t floor_v = static_cast<std::int64_t>(n / 8);
      co[n] = g.range(0, 3) == 0 ? Rational(0) : g.p_scaled(p, floor_v + (n < 8 ? 1 : 0), floor_v + 2, 1000).num();
    }
    co[static_cast<std::size_t>(g.range(0, 7))] = Rational(Integer(g.p_scaled(p, 0, 0, 1000).num()));
    const TruncatedSeries f(p, co, Rational(0), 40);
    const auto w = weierstrass_prepare(f, budget);
    const auto g0 = gauss_norm_v(f);
    c.expect(w.P.is_monic() && w.P.degree() == static_cast<long>(*g0.argmin_last), "P monic of degree argmin_last");
    c.expect(is_unit(w.psi), "psi is a unit");
    // Recompute the defect independently of the reported valuation.
    const Polynomial defect = (f.to_polynomial() - w.P * w.psi.to_polynomial()).truncated(41);
    c.expect(defect.is_zero() || testsupport::min_vp(defect, 5) > budget, "residual above the budget");
  }
  c.expect(strassmann_bound(log_truncated(40, p, Rational(1))) == 1, "Strassmann log");
  c.expect(strassmann_bound(exp_truncated(40, p, Rational(1))) == 0, "Strassmann exp");
  return c.done("50 series, M = 40, p = 5");
}

// 10 ------------------------------------------------------------------------
Outcome resultant_laws() {
  Check c;
  Gen g(1010);
  for (int t = 0; t < 200; ++t) {
    const Prime p(g.small_prime());
    const std::int64_t k = g.range(1, 6);
    auto integral = [&](std::size_t d) {
      std::vector<Rational> co(d + 1);
      for (auto& x : co) {
        do x = g.rational(40);
        while (mpz_divisible_ui_p(x.den().get_mpz_t(), p.value()));
      }
      return co;
    };
    const std::size_t da = static_cast<std::size_t>(g.range(1, 4)), db = static_cast<std::size_t>(g.range(1, 4));
    const auto ca = integral(da), cb = integral(db);
    const Rational exact = resultant(Polynomial(ca), Polynomial(cb), da, db);
    std::vector<Residue> ra, rb;
    for (const auto& x : ca) ra.push_back(Residue::from_rational(x, p, k));
    for (const auto& x : cb) rb.push_back(Residue::from_rational(x, p, k));
    c.expect(resultant(ra, rb, da, db).value() == testsupport::reduce_brute(exact, p.power(k)), "base change");
  }
  std::vector<Polynomial> polys;
  for (int d = 1; d <= 3; ++d) {
    int count = 1;
    for (int i = 0; i <= d; ++i) count *= 3;
    for (int code = 0; code < count; ++code) {
      std::vector<Rational> co(static_cast<std::size_t>(d + 1));
      int x = code;
      for (auto& ci : co) {
        ci = Rational(x % 3 - 1);
        x /= 3;
      }
      if (!co.back().is_zero()) polys.emplace_back(std::move(co));
    }
  }
  for (const auto& A : polys)
    for (const auto& B : polys) c.expect(resultant(A, B).is_zero() == (gcd(A, B).degree() > 0), "vanishing");
  for (int t = 0; t < 200; ++t) {
    std::vector<Rational> r(4);
    for (auto& x : r) x = g.rational(7);
    const Rational lc = g.nonzero_rational(4);
    Rational expect = pow(lc, 7);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) expect *= (r[i] - r[j]) * (r[i] - r[j]);
    c.expect(discriminant(testsupport::from_roots(r, lc), 4) == expect, "discriminant of split quartic");
  }
  return c.done("base change, " + std::to_string(polys.size() * polys.size()) + " vanishing pairs, quartics");
}

// 11 ------------------------------------------------------------------------
Outcome product_formula() {
  Check c;
  Gen g(1011);
  for (int t = 0; t < 1000; ++t) {
    const Rational a = g.nonzero_rational(1000000);
    const auto r = product_formula_check(a);
    c.expect(r.holds, "holds for " + a.to_string());
    Rational prod = a.abs();
    for (std::size_t k = 1; k < r.breakdown.size(); ++k) {
      const std::uint64_t p = std::stoull(r.breakdown[k].place);
      prod *= pow(Rational(Integer(static_cast<unsigned long>(p))), -testsupport::vp_by_division(a, p));
    }
    c.expect(prod == Rational(1), "independent product for " + a.to_string());
  }
  return c.done("1000 rationals");
}

// 12 ------------------------------------------------------------------------
Outcome minkowski_law() {
  Check c;
  Gen g(1012);
  for (int t = 0; t < 200; ++t) {
    const MultiPoly f = g.bivariate(5, 7, 20), h = g.bivariate(5, 7, 20);
    c.expect(polytope2(f * h).vertices == minkowski_sum(polytope2(f), polytope2(h)).vertices,
             f.to_string() + " * " + h.to_string());
  }
  return c.done("200 pairs");
}

// 13 ------------------------------------------------------------------------
Outcome multivariate_newton() {
  Check c;
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1), one = MultiPoly::constant(2, Rational(1));
  const std::vector<MultiPoly> sys{x * x - Rational(2) * one, y * y - x - one};
  const Prime p(7);
  const auto r3 = newton_system(sys, {Rational(3), Rational(2)}, p, 3);
  c.expect(r3.root[0].num() == 108 && r3.root[1].num() == 65, "(108, 65) mod 7^3");
  const auto r10 = newton_system(sys, {Rational(3), Rational(2)}, p, 10);
  const Integer m3 = p.power(3);
  c.expect(mod(r10.root[0].num(), m3) == 108 && mod(r10.root[1].num(), m3) == 65, "extension agrees mod 7^3");
  const std::vector<Rational> pt{Rational(r10.root[0].num()), Rational(r10.root[1].num())};
  for (const auto& f : sys) {
    const Rational v = f.eval(pt);
    c.expect(v.is_zero() || testsupport::vp_by_division(v, 7) >= 10, "substitution mod 7^10");
  }
  return c.done("(" + r10.root[0].num().get_str() + ", " + r10.root[1].num().get_str() + ") mod 7^10");
}

// 14 ------------------------------------------------------------------------
Outcome legendre_duality() {
  Check c;
  Gen g(1014);
  int made = 0;
  while (made < 100) {
    const Prime p(g.small_prime());
    std::vector<Rational> co(static_cast<std::size_t>(g.range(2, 9)));
    for (auto& v : co) v = g.coin() ? Rational(0) : g.p_scaled(p, -3, 5, 30);
    co.front() = g.p_scaled(p, -3, 5, 30);
    co.back() = g.p_scaled(p, -3, 5, 30);
    const Polynomial f(co);
    ++made;
    std::vector<std::pair<std::int64_t, Rational>> pts;
    for (std::size_t m = 0; m < co.size(); ++m)
      if (!co[m].is_zero()) pts.emplace_back(static_cast<std::int64_t>(m), Rational(testsupport::vp_by_division(co[m], p.value())));
    // Breakpoints of tau are among the chord slopes.
    std::vector<Rational> xs;
    for (const auto& [i, vi] : pts)
      for (const auto& [j, vj] : pts)
        if (i < j) xs.push_back((vj - vi) / Rational(j - i));
    auto sup = [&](const Rational& t) {
      std::optional<Rational> best;
      for (const auto& x : xs) {
        const Rational val = t * x - tropical_eval(f, PadicPlace{p}, x);
        if (!best || val > *best) best = val;
      }
      return *best;
    };
    const auto ng = newton_polygon(f, p);
    std::vector<Rational> probes;
    for (const auto& v : ng.vertices) probes.emplace_back(v.m);
    const std::int64_t span = static_cast<std::int64_t>(co.size()) - 1;
    for (int k = 0; k < 10; ++k) {
      const std::int64_t den = g.range(2, 12);
      probes.emplace_back(Integer(g.range(1, span * den - 1)), Integer(den));
    }
    for (const auto& t : probes) c.expect(legendre_dual(ng, t) == ExtRational(sup(t)), f.to_string() + " at " + t.to_string());
  }
  return c.done("100 polynomials");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;  // 0 means no time limit
  };
  const std::vector<Criterion> criteria{
      {1, "Figure 2 polygon of the truncated exponential at p=2", figure_two, 1.0},
      {2, "Legendre formula against the floor sum", legendre_formula, 5.0},
      {3, "Hensel lift of sqrt(2) in Z_7 to 7^20", hensel_sqrt_two, 0},
      {4, "Teichmuller representatives modulo p^50", teichmuller_group, 0},
      {5, "Gauss norm multiplicativity", gauss_multiplicativity, 0},
      {6, "Irreducibility certificates", irreducibility_certificates, 0},
      {7, "Slope factorization of products of linear factors", slope_factorization_criterion, 0},
      {8, "Coleman bound for the degree-30 exponential", coleman, 2.0},
      {9, "Weierstrass preparation and Strassmann bounds", weierstrass_criterion, 0},
      {10, "Resultant laws", resultant_laws, 0},
      {11, "Product formula", product_formula, 0},
      {12, "Minkowski product law", minkowski_law, 0},
      {13, "Multivariate Newton on (x^2-2, y^2-x-1)", multivariate_newton, 0},
      {14, "Legendre duality", legendre_duality, 0},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = cr.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && cr.limit_seconds > 0 && secs >= cr.limit_seconds) {
      out.ok = false;
      std::ostringstream s;
      s << "took " << secs << " s, limit " << cr.limit_seconds << " s";
      out.detail = s.str();
    }
    failures += !out.ok;
    std::printf("%s %2d  %-55s %8.3f s  %s\n", out.ok ? "PASS" : "FAIL", cr.id, cr.name, secs, out.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
