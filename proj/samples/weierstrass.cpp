// Weierstrass preparation of 5 + T + 5T^2 + 5T^3 over Z_5 and the slope
// factorisation of (T - 1)(T - 3)(T - 9) over Z_3.
#include <iostream>

#include "nonarch/nonarch.hpp"

int main() {
  using namespace nonarch;
  const TruncatedSeries f(Prime(5), {Rational(5), Rational(1), Rational(5), Rational(5)});
  const WeierstrassResult w = weierstrass_prepare(f, 10);
  std::cout << "N = " << w.N << ", P = " << w.P.to_string() << "\n";
  std::cout << "Strassmann bound " << strassmann_bound(f) << "\n";

  const Polynomial phi = Polynomial({Rational(-1), Rational(1)}) * Polynomial({Rational(-3), Rational(1)}) *
                         Polynomial({Rational(-9), Rational(1)});
  for (const auto& sf : slope_factorization(phi, Prime(3), 4))
    std::cout << "slope " << sf.slope << ": " << sf.factor.to_string() << "\n";
}
