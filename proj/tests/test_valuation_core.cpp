#include <gtest/gtest.h>

#include <map>

#include "nonarch/valuation.hpp"
#include "support.hpp"

using namespace nonarch;
using testsupport::Gen;

TEST(Rational, ParseAcceptsExactLiterals) {
  EXPECT_EQ(Rational::parse("-63/8"), Rational(Integer(-63), Integer(8)));
  EXPECT_EQ(Rational::parse("+4/6"), Rational(Integer(2), Integer(3)));
  EXPECT_EQ(Rational::parse("12"), Rational(12));
}

TEST(Rational, ParseRejectsFloatsAndJunk) {
  for (const char* bad : {"1.5", "1e3", "", "/3", "3/", "3/-4", "1/0", "0x10", " 1"}) {
    try {
      Rational::parse(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::ParseError || e.code() == ErrorCode::DivisionByZero) << bad;
    }
  }
}

TEST(Prime, RejectsComposites) {
  EXPECT_THROW(Prime(1), Error);
  EXPECT_THROW(Prime(91), Error);
  EXPECT_THROW(Prime(3215031751ull), Error);  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_NO_THROW(Prime(18446744073709551557ull));
}

TEST(Prime, MillerRabinMatchesSieve) {
  std::vector<bool> sieve(20000, true);
  sieve[0] = sieve[1] = false;
  for (std::size_t i = 2; i * i < sieve.size(); ++i)
    if (sieve[i])
      for (std::size_t j = i * i; j < sieve.size(); j += i) sieve[j] = false;
  for (std::uint64_t n = 0; n < sieve.size(); ++n) { EXPECT_EQ(is_prime_u64(n), sieve[n]) << n; }
}

TEST(Vp, Examples) {
  EXPECT_TRUE(vp(0, Prime(5)).is_infinite());
  EXPECT_EQ(vp(7, Prime(7)), ExtRational(1));
  EXPECT_EQ(vp(Rational::parse("-63/8"), Prime(2)), ExtRational(-3));
}

TEST(Vp, MatchesRepeatedDivision) {
  Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t p = g.small_prime();
    const Rational a = g.nonzero_rational(100000);
    EXPECT_EQ(vp_int(a, Prime(p)), testsupport::vp_by_division(a, p)) << a << " p=" << p;
  }
}

TEST(Vp, UltrametricAndMultiplicative) {
  Gen g(12);
  for (int i = 0; i < 2000; ++i) {
    const Prime p(g.small_prime());
    const Rational a = g.p_scaled(p, -4, 6, 1000);
    const Rational b = g.p_scaled(p, -4, 6, 1000);
    EXPECT_EQ(vp(a * b, p), vp(a, p) + vp(b, p));
    EXPECT_GE(vp(a + b, p), min(vp(a, p), vp(b, p)));
    if (vp(a, p) != vp(b, p)) { EXPECT_EQ(vp(a + b, p), min(vp(a, p), vp(b, p))); }
  }
}

TEST(AbsAtPlace, Examples) {
  EXPECT_EQ(abs_at_place(Rational::parse("-63/8"), PadicPlace{Prime(2)}), Rational(8));
  EXPECT_EQ(abs_at_place(5, TrivialPlace{}), Rational(1));
  EXPECT_EQ(abs_at_place(0, PadicPlace{Prime(3)}), Rational(0));
  EXPECT_EQ(abs_at_place(Rational::parse("-63/8"), RealPlace{}), Rational::parse("63/8"));
}

TEST(ProductFormula, Examples) {
  const auto zero = product_formula_check(0);
  EXPECT_TRUE(zero.holds);

  const auto r = product_formula_check(Rational::parse("-63/8"));
  EXPECT_TRUE(r.holds);
  std::map<std::string, Rational> br;
  for (const auto& pv : r.breakdown) br[pv.place] = pv.value;
  EXPECT_EQ(br.size(), 4u);
  EXPECT_EQ(br["inf"], Rational::parse("63/8"));
  EXPECT_EQ(br["2"], Rational(8));
  EXPECT_EQ(br["3"], Rational::parse("1/9"));
  EXPECT_EQ(br["7"], Rational::parse("1/7"));
  EXPECT_EQ(r.breakdown.front().place, "inf");

  const auto one = product_formula_check(1);
  EXPECT_TRUE(one.holds);
  ASSERT_EQ(one.breakdown.size(), 1u);
  EXPECT_EQ(one.breakdown[0].value, Rational(1));
}

TEST(ProductFormula, GuardRefusesRatherThanGuessing) {
  // 1000003 * 1000033 has no factor below the bound and is not certifiable.
  const Rational a(Integer("1000036000099"));
  try {
    product_formula_check(a, Integer(1000));
    FAIL() << "expected a size-guard refusal";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeGuardExceeded);
  }
}

TEST(ProductFormula, RandomRationals) {
  Gen g(13);
  for (int i = 0; i < 500; ++i) {
    const Rational a = g.nonzero_rational(1000000);
    const auto r = product_formula_check(a);
    EXPECT_TRUE(r.holds) << a;
    // Independent recomputation of the product from the listed places.
    Rational prod = a.abs();
    for (std::size_t k = 1; k < r.breakdown.size(); ++k) {
      const std::uint64_t p = std::stoull(r.breakdown[k].place);
      prod *= pow(Rational(Integer(static_cast<unsigned long>(p))), -testsupport::vp_by_division(a, p));
    }
    EXPECT_EQ(prod, Rational(1));
  }
}

TEST(DigitSum, Examples) {
  EXPECT_EQ(digit_sum_base_p(0, Prime(3)), 0u);
  EXPECT_EQ(digit_sum_base_p(30, Prime(2)), 4u);
  EXPECT_EQ(digit_sum_base_p(30, Prime(5)), 2u);
}

TEST(VpFactorial, Examples) {
  EXPECT_EQ(vp_factorial(0, Prime(5)), 0u);
  EXPECT_EQ(vp_factorial(30, Prime(2)), 26u);
  EXPECT_EQ(vp_factorial(30, Prime(5)), 7u);
}

TEST(VpFactorial, MatchesFloorSumAndDirectCount) {
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    std::uint64_t direct = 0;
    for (std::uint64_t n = 0; n <= 3000; ++n) {
      if (n > 0) direct += static_cast<std::uint64_t>(testsupport::vp_by_division(Rational(Integer(static_cast<unsigned long>(n))), p));
      EXPECT_EQ(vp_factorial(n, Prime(p)), testsupport::legendre_floor_sum(n, p));
      EXPECT_EQ(vp_factorial(n, Prime(p)), direct);
    }
  }
}

TEST(FactorTrial, ReassemblesInput) {
  Gen g(14);
  for (int i = 0; i < 300; ++i) {
    const Integer n = g.nonzero_integer(1000000000);
    Integer prod = 1;
    for (const auto& [q, e] : factor_trial(n, Integer(1000000))) {
      EXPECT_TRUE(is_prime_u64(q.get_ui()));
      prod *= testsupport::ipow(q, e);
    }
    EXPECT_EQ(prod, n < 0 ? Integer(-n) : n);
  }
}
