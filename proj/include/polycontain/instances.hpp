#pragma once

#include "polycontain/polytope.hpp"

namespace polycontain {

/// [-r, r]^d as 2d inequalities (rows +e_i, -e_i).
HPolytope h_cube(std::size_t d, const Rational& r = 1);

/// conv(+-e * e_i), 2d points.
VPolytope v_cross(std::size_t d, const Rational& e = 1);

/// The 2^d sign vectors; column j has +1 in coordinate i iff bit i of j is set.
VPolytope v_cube(std::size_t d);

/// Quadrilateral {(0,-1), (-1,0), (1,-1), (1,2)} in H-form.
HPolytope nonsym_p();
VPolytope nonsym_q1();
VPolytope nonsym_q2();

}  // namespace polycontain
