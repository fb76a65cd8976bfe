#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <future>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expr.hpp"
#include "nonarch/nonarch.hpp"
#include "svg.hpp"

namespace nonarch::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr std::int64_t kFallbackPrecision = 20;
constexpr std::uint64_t kResidueScanLimit = 100000;

// ---------------------------------------------------------------------------
// JSON encoding

json rat(const Rational& r) {
  if (r.is_integer() && r.num().fits_slong_p()) return static_cast<std::int64_t>(r.num().get_si());
  return r.to_string();
}

json ext(const ExtRational& r) { return r.is_infinite() ? json("+inf") : rat(r.value()); }

json poly_json(const Polynomial& f, const std::string& var = "T") {
  json c = json::array();
  for (const auto& x : f.coefficients()) c.push_back(rat(x));
  return json{{"coefficients", c}, {"text", f.to_string(var)}};
}

json padic_json(const PadicNumber& x) {
  json j;
  j["repr"] = x.to_string();
  j["state"] = x.is_exact_zero() ? "exact-zero" : x.is_zero_at_precision() ? "zero-at-precision" : "nonzero";
  j["valuation"] = x.valuation() ? json(*x.valuation()) : json(nullptr);
  j["unit"] = x.is_nonzero() ? rat(Rational(x.unit())) : json(nullptr);
  j["relative_precision"] = x.relative_precision();
  j["absolute_precision"] = x.absolute_precision() ? json(*x.absolute_precision()) : json(nullptr);
  return j;
}

json point_pairs(const std::vector<PolygonVertex>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(json::array({q.m, rat(q.v)}));
  return a;
}

json lattice_json(const LatticePolygon& P) {
  json a = json::array();
  for (const auto& q : P.vertices) a.push_back(json::array({q.x, q.y}));
  return a;
}

json polygon_json(const NewtonPolygon& ng, const std::vector<PolygonVertex>& points, const std::string& place) {
  json r;
  r["place"] = place;
  r["ord"] = ng.ord;
  r["points"] = point_pairs(points);
  r["vertices"] = point_pairs(ng.vertices);
  json slopes = json::array(), lengths = json::array();
  for (const auto& s : ng.segments) {
    slopes.push_back(rat(s.slope));
    lengths.push_back(s.length);
  }
  r["slopes"] = slopes;
  r["lengths"] = lengths;
  if (ng.ord == 0) {
    json rv = json::array();
    for (const auto& x : root_valuations(ng)) rv.push_back({{"valuation", rat(x.valuation)}, {"multiplicity", x.multiplicity}});
    r["root_valuations"] = rv;
  }
  return r;
}

void flatten_tsv(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten_tsv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten_tsv(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += (prefix.empty() ? "result" : prefix) + "\t" + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

// ---------------------------------------------------------------------------
// Argument access

std::int64_t parse_int64(const std::string& text, const std::string& what) {
  const Rational r = Rational::parse(text);
  if (!r.is_integer() || !r.num().fits_slong_p()) fail(ErrorCode::ParseError, what + " must be a 64-bit integer, got '" + text + "'");
  return r.num().get_si();
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

class Args {
 public:
  std::vector<std::pair<std::string, std::vector<std::string>>> given;
  std::vector<std::string> flags;
  const Environment* env = nullptr;

  bool has(const std::string& name) const {
    for (const auto& [k, v] : given)
      if (k == name) return true;
    return std::find(flags.begin(), flags.end(), name) != flags.end();
  }
  const std::vector<std::string>& values(const std::string& name) const {
    for (const auto& [k, v] : given)
      if (k == name) return v;
    fail(ErrorCode::ParseError, "missing --" + name);
  }
  const std::string& str(const std::string& name) const { return values(name).front(); }
  Rational rational(const std::string& name) const { return Rational::parse(str(name)); }
  Rational rational_or(const std::string& name, const Rational& dflt) const { return has(name) ? rational(name) : dflt; }
  std::int64_t integer(const std::string& name) const { return parse_int64(str(name), "--" + name); }
  Prime prime() const {
    const std::int64_t p = integer("prime");
    if (p < 2) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    return Prime(static_cast<std::uint64_t>(p));
  }
  /// --precision, else NONARCH_PRECISION, else the built-in default.
  std::int64_t precision(const std::string& name = "precision") const {
    std::int64_t n = kFallbackPrecision;
    if (has(name))
      n = integer(name);
    else if (env && env->default_precision)
      n = parse_int64(*env->default_precision, "NONARCH_PRECISION");
    if (n < 1) fail(ErrorCode::PreconditionViolated, "precision must be at least 1");
    if (n > 100000) fail(ErrorCode::SizeGuardExceeded, "precision above 100000");
    return n;
  }
  std::vector<Rational> rational_list(const std::string& name) const {
    std::vector<Rational> out;
    for (const auto& s : split_commas(str(name))) out.push_back(Rational::parse(s));
    return out;
  }
};

struct Response {
  json input = json::object();
  json result;
  json certificates = json::array();
  std::string module;
  std::string op;
  int exit_code = kOk;
  std::optional<std::string> raw;  ///< non-JSON payload (SVG)
};

// ---------------------------------------------------------------------------
// Input helpers

/// exp-trunc:N, log-trunc:N, or a univariate expression.
struct SeriesSource {
  std::optional<SeriesKind> kind;
  std::size_t n = 0;
  Polynomial poly;
};

SeriesSource parse_source(const std::string& text) {
  SeriesSource s;
  for (auto [prefix, kind] : {std::pair{"exp-trunc:", SeriesKind::Exp}, std::pair{"log-trunc:", SeriesKind::Log}}) {
    const std::string pre(prefix);
    if (text.rfind(pre, 0) == 0) {
      const std::int64_t n = parse_int64(text.substr(pre.size()), "generator length");
      if (n < 0 || n > 5000) fail(ErrorCode::SizeGuardExceeded, "generator length outside [0, 5000]");
      s.kind = kind;
      s.n = static_cast<std::size_t>(n);
      // The prime is irrelevant for the coefficients themselves.
      const Prime two(2);
      s.poly = (kind == SeriesKind::Exp ? exp_truncated(s.n, two) : log_truncated(s.n, two)).to_polynomial();
      return s;
    }
  }
  s.poly = parse_univariate(text);
  return s;
}

TruncatedSeries series_from_args(const Args& a, const std::string& opt = "series") {
  const Prime p = a.prime();
  const Rational s = a.rational_or("radius", Rational(0));
  const SeriesSource src = parse_source(a.str(opt));
  std::size_t M = src.poly.degree() < 0 ? 0 : static_cast<std::size_t>(src.poly.degree());
  if (src.kind) M = src.n;
  if (a.has("truncation")) {
    const std::int64_t t = a.integer("truncation");
    if (t < 0 || t > 100000) fail(ErrorCode::SizeGuardExceeded, "truncation outside [0, 100000]");
    if (src.kind && static_cast<std::size_t>(t) != src.n)
      fail(ErrorCode::PreconditionViolated, "--truncation conflicts with the generator length");
    M = static_cast<std::size_t>(t);
  }
  return TruncatedSeries::from_polynomial(src.poly, p, s, M);
}

std::vector<std::string> variables_for(const Args& a, const std::vector<std::string>& texts) {
  if (a.has("vars")) return split_commas(a.str("vars"));
  std::vector<std::string> vars;
  for (const auto& t : texts)
    for (const auto& id : identifiers(t))
      if (std::find(vars.begin(), vars.end(), id) == vars.end()) vars.push_back(id);
  return vars;
}

std::int64_t min_vp(const Polynomial& f, const Prime& p) {
  std::int64_t best = INT64_MAX;
  for (const auto& c : f.coefficients())
    if (!c.is_zero()) best = std::min(best, vp_int(c, p));
  return best;
}

json min_vp_json(const Polynomial& f, const Prime& p) {
  const std::int64_t v = min_vp(f, p);
  return v == INT64_MAX ? json("+inf") : json(v);
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_vp(const Args& a, Response& r) {
  r.result = ext(vp(a.rational("value"), a.prime()));
}

void cmd_product_formula(const Args& a, Response& r) {
  const Integer bound = a.has("bound") ? Integer(a.integer("bound")) : Integer(1000000000);
  const ProductFormulaReport rep = product_formula_check(a.rational("value"), bound);
  json br = json::array();
  for (const auto& pv : rep.breakdown) br.push_back({{"place", pv.place}, {"abs", rat(pv.value)}});
  r.result = {{"holds", rep.holds}, {"breakdown", br}, {"product", rat(rep.product)}, {"trivial", rat(rep.trivial)}};
  r.certificates.push_back({{"kind", "product-formula"}, {"holds", rep.holds}});
  if (!rep.holds) r.exit_code = kPreconditionFailure;
}

void cmd_padic(const Args& a, Response& r) {
  const Prime p = a.prime();
  const std::int64_t N = a.precision();
  const PadicNumber x = PadicNumber::from_rational(a.rational("value"), p, N);
  const std::string op = a.has("op") ? a.str("op") : "none";
  PadicNumber res = x;
  if (op != "none" && op != "neg" && !a.has("other")) fail(ErrorCode::ParseError, "--op " + op + " needs --other");
  if (op == "neg") {
    res = -x;
  } else if (op != "none") {
    const PadicNumber y = PadicNumber::from_rational(a.rational("other"), p, N);
    if (op == "add") res = x + y;
    else if (op == "sub") res = x - y;
    else if (op == "mul") res = x * y;
    else if (op == "div") res = x / y;
    else fail(ErrorCode::ParseError, "unknown --op '" + op + "'");
  }
  r.result = padic_json(res);
  if (a.has("digits")) {
    json d = json::array();
    for (auto x : res.digits(a.integer("digits"))) d.push_back(x);
    r.result["digits"] = d;
  }
}

void cmd_teichmuller(const Args& a, Response& r) {
  const Prime p = a.prime();
  const std::int64_t N = a.precision();
  const PadicNumber t = teichmuller(Integer(a.integer("unit")), p, N);
  r.result = t.to_string();
  const Integer m = p.power(N);
  const bool root = pow_mod(t.residue(), p.integer() - 1, m) == 1;
  const bool lifts = mod(t.residue() - Integer(a.integer("unit")), p.integer()) == 0;
  r.certificates.push_back({{"kind", "root-of-unity"}, {"check", "theta^(p-1) = 1 mod p^N"}, {"holds", root}});
  r.certificates.push_back({{"kind", "residue"}, {"check", "theta = u mod p"}, {"holds", lifts}});
}

void cmd_sqrt(const Args& a, Response& r) {
  const Prime p = a.prime();
  const std::int64_t N = a.precision();
  const PadicNumber x = PadicNumber::from_rational(a.rational("value"), p, N);
  const SqrtResult s = padic_sqrt(x);
  if (!s.root) {
    r.result = {{"exists", false}, {"root", nullptr}, {"reason", s.reason}};
    return;
  }
  r.result = {{"exists", true}, {"root", s.root->to_string()}, {"reason", nullptr}};
  r.result["detail"] = padic_json(*s.root);
  const PadicNumber sq = *s.root * *s.root;
  r.certificates.push_back({{"kind", "square-check"}, {"check", "root^2 = x at the precision of root^2"}, {"holds", sq == x || (sq - x).is_zero_at_precision() || (sq - x).is_exact_zero()}});
}

json lift_json(const LiftResult& L) {
  return {{"root", L.root.to_string()},
          {"iterations", L.iterations},
          {"residual_valuation", L.residual_valuation},
          {"derivative_valuation", L.derivative_valuation},
          {"residual_trace", L.residual_trace},
          {"derivative_trace", L.derivative_trace}};
}

void cmd_hensel(const Args& a, Response& r) {
  const Prime p = a.prime();
  const std::int64_t N = a.precision();
  const Polynomial phi = parse_univariate(a.str("poly"));
  auto check = [&](const PadicNumber& root) {
    const ExtRational v = root.is_exact_zero() ? vp(phi(Rational(0)), p) : vp(phi(root.to_rational()), p);
    return json{{"kind", "substitution"}, {"check", "v(phi(root)) >= precision"}, {"holds", v >= ExtRational(Rational(N))}};
  };
  if (a.has("start")) {
    const LiftResult L = newton_lift(phi, PadicNumber::from_rational(a.rational("start"), p, N), N);
    r.result = lift_json(L);
    r.certificates.push_back({{"kind", "newton-condition"},
                              {"check", "v(phi(a)) > 2 v(phi'(a))"},
                              {"holds", L.residual_valuation > 2 * L.derivative_valuation}});
    r.certificates.push_back(check(L.root));
    return;
  }
  if (p.value() > kResidueScanLimit) fail(ErrorCode::SizeGuardExceeded, "residue scan needs p <= 100000; pass --start");
  nonarch::detail::require_integral(phi, p, "polynomial");
  json roots = json::array(), multiple = json::array();
  const Polynomial dphi = phi.derivative();
  for (std::uint64_t x = 0; x < p.value(); ++x) {
    const Rational rx(Integer(static_cast<unsigned long>(x)));
    if (vp(phi(rx), p) < ExtRational(1)) continue;
    if (vp(dphi(rx), p) >= ExtRational(1)) {
      multiple.push_back(x);
      continue;
    }
    const PadicNumber root = simple_root_lift(phi, Integer(static_cast<unsigned long>(x)), p, N);
    roots.push_back({{"residue", x}, {"root", root.to_string()}});
    r.certificates.push_back(check(root));
  }
  r.result = {{"roots", roots}, {"multiple_residue_roots", multiple}};
}

void cmd_hensel_system(const Args& a, Response& r) {
  const Prime p = a.prime();
  const std::int64_t N = a.precision();
  const auto& eqs = a.values("eq");
  const auto vars = variables_for(a, eqs);
  std::vector<MultiPoly> sys;
  for (const auto& e : eqs) sys.push_back(parse_multi(e, vars));
  const SystemResult s = newton_system(sys, a.rational_list("start"), p, N);
  json root = json::array(), residues = json::array();
  const Integer m = p.power(N);
  for (const auto& x : s.root) {
    root.push_back(rat(x));
    residues.push_back(residue_mod(x, m).get_str() + " mod " + m.get_str());
  }
  r.result = {{"vars", vars},
              {"root", root},
              {"residues", residues},
              {"iterations", s.report.iterations},
              {"residual_valuation", s.report.residual_valuation},
              {"jacobian_valuation", s.report.jacobian_valuation},
              {"residual_trace", s.report.residual_trace},
              {"jacobian_trace", s.report.jacobian_trace}};
  bool ok = true;
  for (const auto& f : sys) ok = ok && vp(f.eval(s.root), p) >= ExtRational(Rational(N));
  r.certificates.push_back({{"kind", "substitution"}, {"check", "v(Phi_i(root)) >= precision"}, {"holds", ok}});
}

void cmd_lift_factor(const Args& a, Response& r) {
  const Prime p = a.prime();
  const std::int64_t N = a.precision();
  const Polynomial phi = parse_univariate(a.str("poly"));
  const Polynomial psi0 = parse_univariate(a.str("psi"));
  const Polynomial eta0 = parse_univariate(a.str("eta"));
  const FactorLift L = lift_factorization(phi, psi0, eta0, p, N);
  r.result = {{"psi", poly_json(L.psi)},
              {"eta", poly_json(L.eta)},
              {"iterations", L.iterations},
              {"resultant_valuation", L.resultant_valuation},
              {"defect_valuation", L.defect_valuation ? json(*L.defect_valuation) : json("+inf")}};
  r.certificates.push_back({{"kind", "lifting-condition"},
                            {"check", "v(phi - psi0*eta0) > 2 v(Res(psi0, eta0))"},
                            {"holds", !L.defect_valuation || *L.defect_valuation > 2 * L.resultant_valuation}});
  const std::int64_t v = min_vp(phi - L.psi * L.eta, p);
  r.certificates.push_back({{"kind", "product"}, {"check", "phi = psi*eta mod p^precision"}, {"holds", v >= N}});
}

void cmd_resultant(const Args& a, Response& r) {
  const Polynomial P = parse_univariate(a.str("left"));
  auto formal = [&](const std::string& name, const Polynomial& f) -> std::size_t {
    if (!a.has(name)) {
      if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "formal degree of the zero polynomial; pass --" + name);
      return static_cast<std::size_t>(f.degree());
    }
    const std::int64_t d = a.integer(name);
    if (d < 0 || d > 2000) fail(ErrorCode::SizeGuardExceeded, "--" + name + " outside [0, 2000]");
    return static_cast<std::size_t>(d);
  };
  const std::size_t pd = formal("left-degree", P);
  if (a.has("discriminant")) {
    r.op = "discriminant";
    r.result = {{"value", rat(discriminant(P, pd))}, {"degree", pd}};
    return;
  }
  const Polynomial Q = parse_univariate(a.str("right"));
  const std::size_t qd = formal("right-degree", Q);
  if (a.has("prime")) {
    const Prime p = a.prime();
    const std::int64_t k = a.precision("exponent");
    auto lift = [&](const Polynomial& f, std::size_t d) {
      std::vector<Residue> v;
      for (std::size_t i = 0; i <= d; ++i) v.push_back(Residue::from_rational(f.coeff(i), p, k));
      return v;
    };
    const Residue res = resultant(lift(P, pd), lift(Q, qd), pd, qd);
    r.result = {{"value", res.to_string()}, {"residue", rat(Rational(res.value()))}, {"sylvester_size", pd + qd}};
    const Rational exact = resultant(P, Q, pd, qd);
    r.certificates.push_back({{"kind", "base-change"},
                              {"check", "Res mod p^k = Res over Q reduced"},
                              {"holds", Residue::from_rational(exact, p, k) == res}});
    return;
  }
  const Rational res = resultant(P, Q, pd, qd);
  r.result = {{"value", rat(res)}, {"sylvester_size", pd + qd}};
  if (!P.is_zero() && !Q.is_zero() && pd == static_cast<std::size_t>(P.degree()) && qd == static_cast<std::size_t>(Q.degree())) {
    const long g = gcd(P, Q).degree();
    r.certificates.push_back({{"kind", "common-factor"},
                              {"check", "Res = 0 iff deg gcd > 0"},
                              {"gcd_degree", g},
                              {"holds", res.is_zero() == (g > 0)}});
  }
}

void irreducibility_certificates(const Polynomial& phi, const Prime& p, Response& r, bool& certified) {
  if (!phi.is_monic() || phi.degree() < 1 || phi.coeff(0).is_zero()) return;
  bool integral = true;
  for (const auto& c : phi.coefficients()) integral = integral && vp(c, p) >= ExtRational(0);
  if (!integral) return;
  const bool eis = eisenstein_check(phi, p);
  r.certificates.push_back({{"kind", "eisenstein"}, {"irreducible", eis}});
  const SlopeCertificate sc = pure_slope_irreducible(phi, p);
  json c = {{"kind", "pure-slope"}, {"irreducible", sc.irreducible}};
  if (sc.irreducible) {
    c["r"] = sc.r;
    c["d"] = sc.d;
  }
  r.certificates.push_back(c);
  certified = certified || eis || sc.irreducible;
}

void cmd_polygon(const Args& a, Response& r) {
  const SeriesSource src = parse_source(a.str("poly"));
  const Polynomial& phi = src.poly;
  if (a.has("trivial")) {
    r.result = polygon_json(newton_polygon(phi, TrivialPlace{}), valued_points(phi, TrivialPlace{}), "trivial");
  } else {
    const Prime p = a.prime();
    r.result = polygon_json(newton_polygon(phi, p), valued_points(phi, PadicPlace{p}), std::to_string(p.value()));
  }
  bool certified = false;
  if (!a.has("trivial")) irreducibility_certificates(phi, a.prime(), r, certified);
  if (a.has("coleman-primes")) {
    if (!src.kind || *src.kind != SeriesKind::Exp)
      fail(ErrorCode::PreconditionViolated, "--coleman-primes applies to exp-trunc:N only");
    std::vector<std::uint64_t> primes;
    for (const auto& s : split_commas(a.str("coleman-primes"))) {
      const std::int64_t q = parse_int64(s, "prime");
      if (q < 2) fail(ErrorCode::NotPrime, s + " is not prime");
      primes.push_back(static_cast<std::uint64_t>(q));
    }
    const ColemanReport rep = coleman_degree_bound(src.n, primes);
    json per = json::array();
    for (const auto& pr : rep.per_prime)
      per.push_back({{"p", pr.p}, {"slope_exponents", pr.slope_exponents}, {"bound", rat(Rational(pr.bound))}});
    r.certificates.push_back({{"kind", "coleman"}, {"bound", rat(Rational(rep.bound))}, {"irreducible", rep.irreducible}, {"per_prime", per}});
    certified = certified || rep.irreducible;
  }
  if (a.has("require-irreducible") && !certified) r.exit_code = kPreconditionFailure;
}

void cmd_slope_factor(const Args& a, Response& r) {
  const Prime p = a.prime();
  const std::int64_t N = a.precision();
  const Polynomial phi = parse_univariate(a.str("poly"));
  const auto factors = slope_factorization(phi, p, N);
  json fs = json::array();
  Polynomial prod = Polynomial::constant(1);
  for (const auto& f : factors) {
    json j = poly_json(f.factor);
    j["slope"] = rat(f.slope);
    fs.push_back(j);
    prod = prod * f.factor;
  }
  r.result = {{"factors", fs}};
  r.certificates.push_back({{"kind", "product"}, {"check", "prod P_i = phi mod p^precision"}, {"valuation", min_vp_json(prod - phi, p)}, {"holds", min_vp(prod - phi, p) >= N}});
}

void cmd_series_norm(const Args& a, Response& r) {
  const TruncatedSeries f = series_from_args(a);
  const GaussNorm g = gauss_norm_v(f);
  r.result = {{"w", ext(g.w)}, {"argmin_last", g.argmin_last ? json(*g.argmin_last) : json(nullptr)}, {"truncation", f.order()}};
}

void cmd_weierstrass(const Args& a, Response& r) {
  const TruncatedSeries f = series_from_args(a);
  const std::int64_t budget = a.precision("budget");
  const WeierstrassResult w = weierstrass_prepare(f, budget);
  json psi = json::array();
  for (const auto& c : w.psi.coefficients()) psi.push_back(rat(c));
  r.result = {{"N", w.N},
              {"P", poly_json(w.P)},
              {"psi", {{"coefficients", psi}, {"truncation", w.psi.order()}}},
              {"residual_valuation", w.residual_valuation ? json(*w.residual_valuation) : json("+inf")},
              {"seeding_steps", w.seeding_steps},
              {"lift_iterations", w.lift_iterations}};
  r.certificates.push_back({{"kind", "residual"}, {"check", "v(f - P*psi) > budget"}, {"holds", !w.residual_valuation || *w.residual_valuation > budget}});
  r.certificates.push_back({{"kind", "unit"}, {"check", "psi is a unit on the disc"}, {"holds", is_unit(w.psi)}});
}

void cmd_strassmann(const Args& a, Response& r) { r.result = strassmann_bound(series_from_args(a)); }

void cmd_series_polygon(const Args& a, Response& r) {
  const TruncatedSeries f = series_from_args(a);
  const Polynomial fp = f.to_polynomial();
  r.result = polygon_json(series_polygon(f), valued_points(fp, PadicPlace{f.prime()}), std::to_string(f.prime().value()));
}

void cmd_polytope(const Args& a, Response& r) {
  std::vector<std::string> texts{a.str("poly")};
  if (a.has("other")) texts.push_back(a.str("other"));
  const auto vars = variables_for(a, texts);
  if (vars.size() != 2) fail(ErrorCode::PreconditionViolated, "polytope needs exactly two variables; pass --vars x,y");
  const MultiPoly f = parse_multi(texts[0], vars);
  const LatticePolygon P = polytope2(f);
  json support = json::array();
  for (const auto& e : f.support()) support.push_back(json::array({e[0], e[1]}));
  r.result["vars"] = vars;
  r.result["support"] = support;
  r.result["vertices"] = lattice_json(P);
  if (a.has("other")) {
    const MultiPoly g = parse_multi(texts[1], vars);
    const LatticePolygon Q = polytope2(g);
    const LatticePolygon PQ = polytope2(f * g);
    const LatticePolygon S = minkowski_sum(P, Q);
    r.result["other_vertices"] = lattice_json(Q);
    r.result["product_vertices"] = lattice_json(PQ);
    r.result["minkowski_vertices"] = lattice_json(S);
    r.certificates.push_back({{"kind", "minkowski-product"}, {"check", "Newt(f*g) = Newt(f) + Newt(g)"}, {"holds", PQ == S}});
  }
  if (a.has("hint")) {
    const DecompositionHint h = indecomposable_hint(P);
    json hj = {{"kind", h.kind == Decomposability::Indecomposable ? "indecomposable"
                        : h.kind == Decomposability::Decomposable ? "decomposable"
                                                                  : "unknown"},
               {"primitive_edges", h.primitive_edges}};
    if (h.witness) hj["witness"] = json::array({lattice_json(h.witness->first), lattice_json(h.witness->second)});
    r.result["hint"] = hj;
  }
  const Place place = a.has("prime") ? Place(PadicPlace{a.prime()}) : Place(TrivialPlace{});
  if (a.has("radius")) r.result["gauss_norm"] = ext(gauss_norm_multi(f, place, a.rational_list("radius")));
  if (a.has("tropical")) {
    const TropicalValue t = tropical_eval_multi(f, place, a.rational_list("tropical"));
    json act = json::array();
    for (const auto& e : t.active) act.push_back(json::array({e[0], e[1]}));
    r.result["tropical"] = {{"value", rat(t.value)}, {"unique", t.unique}, {"active", act}};
  }
}

// ---------------------------------------------------------------------------
// render

Rational json_rational(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  fail(ErrorCode::ParseError, "coordinate must be an integer or an \"a/b\" string");
}

std::vector<PlotPoint> json_points(const json& arr) {
  if (!arr.is_array()) fail(ErrorCode::ParseError, "expected an array of points");
  std::vector<PlotPoint> out;
  for (const auto& q : arr) {
    if (!q.is_array() || q.size() != 2) fail(ErrorCode::ParseError, "a point is a two-element array");
    out.push_back({json_rational(q[0]), json_rational(q[1])});
  }
  return out;
}

Figure figure_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("result") || !doc.contains("provenance"))
    fail(ErrorCode::ParseError, "render expects the JSON emitted by polygon, series-polygon or polytope");
  const auto& prov = doc["provenance"];
  const std::string op = prov.value("op", "");
  const auto& res = doc["result"];
  Figure fig;
  if (op == "newton_polygon" || op == "series_polygon") {
    fig.vertices = json_points(res.at("vertices"));
    if (res.contains("points")) fig.points = json_points(res["points"]);
    for (const auto& s : res.at("slopes")) fig.slope_labels.push_back(json_rational(s).to_string());
    fig.title = "Newton polygon, place " + res.value("place", std::string("?"));
  } else if (op == "polytope2") {
    fig.closed = true;
    fig.vertices = json_points(res.at("vertices"));
    if (res.contains("support")) fig.points = json_points(res["support"]);
    fig.title = "Newton polytope";
    if (doc.contains("input") && doc["input"].contains("poly")) fig.title += " of " + doc["input"]["poly"].get<std::string>();
  } else {
    fail(ErrorCode::ParseError, "render cannot draw output of op '" + op + "'");
  }
  return fig;
}

void cmd_render(const Args& a, Response& r, std::istream& in) {
  const std::string src = a.has("input") ? a.str("input") : "-";
  std::string text;
  if (src == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(src);
    if (!f) fail(ErrorCode::ParseError, "cannot read '" + src + "'");
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(ErrorCode::ParseError, "render input is not valid JSON");
  const std::string svg = render_svg(figure_from_json(doc));
  const std::string dst = a.has("output") ? a.str("output") : "-";
  if (dst == "-") {
    r.raw = svg;
    return;
  }
  std::ofstream o(dst, std::ios::binary);
  if (!o) fail(ErrorCode::PreconditionViolated, "cannot write '" + dst + "'");
  o << svg;
  r.result = {{"output", dst}, {"bytes", svg.size()}};
}

// ---------------------------------------------------------------------------
// Command table

struct OptionSpec {
  std::string name;
  std::string help;
  bool required = false;
  bool multi = false;
  bool flag = false;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::string module;
  std::string op;
  std::vector<OptionSpec> options;
  std::function<void(const Args&, Response&, std::istream&)> run;
};

template <class F>
std::function<void(const Args&, Response&, std::istream&)> plain(F f) {
  return [f](const Args& a, Response& r, std::istream&) { f(a, r); };
}

const std::vector<CommandSpec>& commands() {
  static const OptionSpec prime{"prime", "prime p", true};
  static const OptionSpec prime_opt{"prime", "prime p"};
  static const OptionSpec precision{"precision", "absolute precision exponent (default NONARCH_PRECISION or 20)"};
  static const OptionSpec radius{"radius", "radius exponent s, disc |T| <= p^-s (default 0)"};
  static const OptionSpec trunc{"truncation", "truncation order M (default: degree or generator length)"};
  static const OptionSpec series{"series", "series: polynomial expression, exp-trunc:N or log-trunc:N", true};
  static const std::vector<CommandSpec> table = {
      {"vp", "p-adic valuation of a rational", "valuation_core", "vp",
       {prime, {"value", "rational a or a/b", true}}, plain(cmd_vp)},
      {"product-formula", "check the product formula over all places", "valuation_core", "product_formula_check",
       {{"value", "nonzero rational", true}, {"bound", "trial-division bound (default 10^9)"}}, plain(cmd_product_formula)},
      {"padic", "p-adic ring operations and digits", "padic_arith", "padic",
       {prime, {"value", "rational", true}, precision, {"op", "none|neg|add|sub|mul|div"}, {"other", "second operand"},
        {"digits", "number of digits to list"}},
       plain(cmd_padic)},
      {"teichmuller", "Teichmuller representative of a unit residue", "padic_arith", "teichmuller",
       {prime, {"unit", "integer not divisible by p", true}, precision}, plain(cmd_teichmuller)},
      {"sqrt", "square root in Q_p", "padic_arith", "padic_sqrt", {prime, {"value", "rational", true}, precision},
       plain(cmd_sqrt)},
      {"hensel", "Newton lift of a polynomial root (all simple residue roots without --start)", "hensel", "newton_lift",
       {prime, {"poly", "polynomial in one variable", true}, {"start", "approximate root"}, precision}, plain(cmd_hensel)},
      {"hensel-system", "Newton's method for a square polynomial system", "hensel", "newton_system",
       {prime, {"eq", "equation (repeat per equation)", true, true}, {"vars", "comma-separated variable order"},
        {"start", "comma-separated start point", true}, precision},
       plain(cmd_hensel_system)},
      {"lift-factor", "lift an approximate factorisation phi = psi*eta", "hensel", "lift_factorization",
       {prime, {"poly", "phi", true}, {"psi", "psi0", true}, {"eta", "eta0", true}, precision}, plain(cmd_lift_factor)},
      {"resultant", "Sylvester resultant or discriminant", "resultant", "resultant",
       {{"left", "first polynomial", true}, {"right", "second polynomial"}, {"left-degree", "formal degree of left"},
        {"right-degree", "formal degree of right"}, prime_opt, {"exponent", "work modulo p^k"},
        {"discriminant", "discriminant of left instead", false, false, true}},
       plain(cmd_resultant)},
      {"polygon", "Newton polygon with irreducibility certificates", "newton_polygon", "newton_polygon",
       {prime_opt, {"trivial", "use the trivial valuation", false, false, true},
        {"poly", "polynomial, exp-trunc:N or log-trunc:N", true}, {"coleman-primes", "primes for the degree bound"},
        {"require-irreducible", "exit 2 unless irreducibility is certified", false, false, true}},
       plain(cmd_polygon)},
      {"slope-factor", "factor by slopes of the Newton polygon", "newton_polygon", "slope_factorization",
       {prime, {"poly", "monic polynomial", true}, precision}, plain(cmd_slope_factor)},
      {"series-norm", "Gauss norm w_s of a truncated series", "tate_series", "gauss_norm_v",
       {prime, series, radius, trunc}, plain(cmd_series_norm)},
      {"weierstrass", "Weierstrass preparation f = P*psi", "tate_series", "weierstrass_prepare",
       {prime, series, radius, trunc, {"budget", "coefficient precision budget (default NONARCH_PRECISION or 20)"}},
       plain(cmd_weierstrass)},
      {"strassmann", "Strassmann bound on the number of zeros", "tate_series", "strassmann_bound",
       {prime, series, radius, trunc}, plain(cmd_strassmann)},
      {"series-polygon", "Newton polygon of a truncated series", "tate_series", "series_polygon",
       {prime, series, trunc}, plain(cmd_series_polygon)},
      {"polytope", "Newton polytope of a bivariate polynomial", "newton_polytope", "polytope2",
       {{"poly", "bivariate polynomial", true}, {"vars", "variable order, horizontal axis first"},
        {"other", "second polynomial for the product law"}, {"hint", "decomposability hint", false, false, true},
        prime_opt, {"radius", "comma-separated s for the Gauss norm"}, {"tropical", "comma-separated point"}},
       plain(cmd_polytope)},
      {"render", "SVG from polygon or polytope JSON", "cli", "render",
       {{"input", "JSON file or - for stdin"}, {"output", "SVG file or - for stdout"}}, cmd_render},
  };
  return table;
}

// ---------------------------------------------------------------------------
// Driver

struct OutputStyle {
  bool compact = false;
  std::string format = "json";
};

std::string emit(const json& j, const OutputStyle& style) { return (style.compact ? j.dump() : j.dump(2)) + "\n"; }

Invocation error_invocation(const json& input, const std::string& module, const std::string& op, const std::string& code,
                            const std::string& message, int exit_code, const OutputStyle& style) {
  json j;
  j["input"] = input;
  j["error"] = {{"code", code}, {"message", message}};
  j["provenance"] = {{"module", module}, {"op", op}};
  return {exit_code, emit(j, style), "error: " + code + ": " + message + "\n"};
}

Invocation run_batch(const Environment& env, std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  std::vector<Invocation> results(lines.size());
  auto one = [&env](const std::string& line) -> Invocation {
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_array())
      return error_invocation(line, "cli", "batch", "ParseError", "batch line is not a JSON array of strings", kParseFailure, {true});
    std::vector<std::string> args{"--compact"};
    for (const auto& x : j) {
      if (!x.is_string())
        return error_invocation(j, "cli", "batch", "ParseError", "batch arguments must be strings", kParseFailure, {true});
      args.push_back(x.get<std::string>());
    }
    std::istringstream none;
    return run(args, env, none);
  };
  const std::size_t width = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < lines.size(); start += width) {
    std::vector<std::future<Invocation>> jobs;
    const std::size_t stop = std::min(lines.size(), start + width);
    for (std::size_t i = start; i < stop; ++i) jobs.push_back(std::async(std::launch::async, one, std::cref(lines[i])));
    for (std::size_t i = start; i < stop; ++i) results[i] = jobs[i - start].get();
  }
  Invocation total;
  for (const auto& r : results) {
    total.exit_code = std::max(total.exit_code, r.exit_code);
    total.out += r.out;
    if (!r.out.empty() && r.out.back() != '\n') total.out += '\n';
    total.err += r.err;
  }
  return total;
}

}  // namespace

Invocation run(const std::vector<std::string>& args, const Environment& env, std::istream& in) {
  CLI::App app{"Exact non-archimedean computations: valuations, p-adic numbers, Newton polygons and polytopes.", "nonarch"};
  OutputStyle style;
  bool batch = false;
  app.add_flag("--compact", style.compact, "single-line JSON");
  app.add_option("--format", style.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  app.add_flag("--batch", batch, "read JSON arrays of arguments from stdin, one job per line");
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::vector<std::pair<const CommandSpec*, CLI::App*>> subs;
  std::vector<std::pair<std::string, std::string>> store_keys;
  std::map<std::string, std::string> single;
  std::map<std::string, std::vector<std::string>> multi;
  std::map<std::string, bool> flags;
  for (const auto& spec : commands()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    for (const auto& o : spec.options) {
      const std::string key = spec.name + "/" + o.name;
      CLI::Option* opt = nullptr;
      if (o.flag)
        opt = sub->add_flag("--" + o.name, flags[key], o.help);
      else if (o.multi)
        opt = sub->add_option("--" + o.name, multi[key], o.help);
      else
        opt = sub->add_option("--" + o.name, single[key], o.help);
      if (o.required) opt->required();
    }
    subs.emplace_back(&spec, sub);
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help(), ""};
  } catch (const CLI::CallForAllHelp&) {
    return {kOk, app.help("", CLI::AppFormatMode::All), ""};
  } catch (const CLI::ParseError& e) {
    return error_invocation(json(args), "cli", "run", "ParseError", e.what(), kParseFailure, style);
  }

  if (batch) {
    if (!app.get_subcommands().empty())
      return error_invocation(json(args), "cli", "batch", "ParseError", "--batch takes no subcommand", kParseFailure, style);
    return run_batch(env, in);
  }
  if (app.get_subcommands().empty()) return {kParseFailure, "", app.help() + "\nerror: a subcommand is required\n"};

  const CLI::App* chosen = app.get_subcommands().front();
  const CommandSpec* spec = nullptr;
  for (const auto& [s, sub] : subs)
    if (sub == chosen) spec = s;

  Args a;
  a.env = &env;
  Response r;
  r.module = spec->module;
  r.op = spec->op;
  r.input["subcommand"] = spec->name;
  for (const auto& o : spec->options) {
    const std::string key = spec->name + "/" + o.name;
    if (chosen->get_option("--" + o.name)->count() == 0) continue;
    if (o.flag) {
      a.flags.push_back(o.name);
      r.input[o.name] = true;
    } else if (o.multi) {
      a.given.emplace_back(o.name, multi[key]);
      r.input[o.name] = multi[key];
    } else {
      a.given.emplace_back(o.name, std::vector<std::string>{single[key]});
      r.input[o.name] = single[key];
    }
  }

  try {
    spec->run(a, r, in);
  } catch (const Error& e) {
    const int code = e.code() == ErrorCode::ParseError ? kParseFailure : kPreconditionFailure;
    return error_invocation(r.input, r.module, r.op, std::string(to_string(e.code())), e.what(), code, style);
  }

  if (r.raw) return {r.exit_code, *r.raw, ""};
  if (style.format == "tsv") {
    std::string out;
    flatten_tsv(r.result, "", out);
    return {r.exit_code, out, ""};
  }
  json j;
  j["input"] = r.input;
  j["result"] = r.result;
  j["certificates"] = r.certificates;
  j["provenance"] = {{"module", r.module}, {"op", r.op}};
  std::string err;
  if (r.exit_code == kPreconditionFailure) err = "error: certificate requirement not met\n";
  return {r.exit_code, emit(j, style), err};
}

}  // namespace nonarch::cli
