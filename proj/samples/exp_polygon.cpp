// Newton polygon of sum_{n<=30} T^n/n! at p = 2 and the degree bound it
// gives for factors over Q.
#include <iostream>

#include "nonarch/nonarch.hpp"

int main() {
  using namespace nonarch;
  const Prime p(2);
  const NewtonPolygon ng = series_polygon(exp_truncated(30, p));
  for (const auto& v : ng.vertices) std::cout << "vertex (" << v.m << ", " << v.v << ")\n";
  for (const auto& s : ng.segments) std::cout << "slope " << s.slope << " length " << s.length << "\n";

  const ColemanReport rep = coleman_degree_bound(30, {2, 3, 5});
  std::cout << "factor degree bound " << rep.bound << (rep.irreducible ? ", irreducible\n" : "\n");
}
