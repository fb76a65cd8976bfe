#ifndef NONARCH_NONARCH_HPP
#define NONARCH_NONARCH_HPP

#include "nonarch/error.hpp"
#include "nonarch/rational.hpp"
#include "nonarch/valuation.hpp"
#include "nonarch/polynomial.hpp"
#include "nonarch/multipoly.hpp"
#include "nonarch/residue.hpp"
#include "nonarch/padic.hpp"
#include "nonarch/linalg.hpp"
#include "nonarch/resultant.hpp"
#include "nonarch/hensel.hpp"
#include "nonarch/padic_roots.hpp"
#include "nonarch/newton_polygon.hpp"
#include "nonarch/tate_series.hpp"
#include "nonarch/slope_factorization.hpp"
#include "nonarch/newton_polytope.hpp"

#endif  // NONARCH_NONARCH_HPP
