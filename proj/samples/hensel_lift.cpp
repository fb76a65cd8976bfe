// sqrt(2) in Z_7 by Newton's method, then the system x^2 = 2, y^2 = x + 1.
#include <iostream>

#include "nonarch/nonarch.hpp"

int main() {
  using namespace nonarch;
  const Prime p(7);
  const Polynomial phi({Rational(-2), Rational(0), Rational(1)});
  const LiftResult r = newton_lift(phi, PadicNumber::from_residue(3, p, 1), 20);
  std::cout << "sqrt(2) = " << r.root.to_string() << " after " << r.iterations << " steps\n";

  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  const MultiPoly one = MultiPoly::constant(2, Rational(1));
  const SystemResult s = newton_system({x * x - Rational(2) * one, y * y - x - one}, {Rational(3), Rational(2)}, p, 3);
  std::cout << "(x, y) = (" << s.root[0] << ", " << s.root[1] << ") mod 7^3\n";
}
