#include "polycontain/instances.hpp"

namespace polycontain {

HPolytope h_cube(std::size_t d, const Rational& r) {
  RationalMatrix A(2 * d, d);
  RationalVector a(2 * d, r);
  for (std::size_t i = 0; i < d; ++i) {
    A(2 * i, i) = 1;
    A(2 * i + 1, i) = -1;
  }
  return HPolytope(std::move(A), std::move(a));
}

VPolytope v_cross(std::size_t d, const Rational& e) {
  RationalMatrix B(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    B(i, 2 * i) = e;
    B(i, 2 * i + 1) = -e;
  }
  return VPolytope(std::move(B));
}

VPolytope v_cube(std::size_t d) {
  const std::size_t l = std::size_t{1} << d;
  RationalMatrix B(d, l);
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t i = 0; i < d; ++i) B(i, j) = (j >> i) & 1 ? 1 : -1;
  return VPolytope(std::move(B));
}

HPolytope nonsym_p() {
  return HPolytope(RationalMatrix::from_rows({{-1, -1}, {0, -1}, {1, 0}, {-1, 1}}), RationalVector(4, 1));
}

VPolytope nonsym_q1() {
  return VPolytope(RationalMatrix::from_rows({{-1, 0, 2, 2, -1}, {1, 3, 1, -1, -1}}));
}

VPolytope nonsym_q2() {
  return VPolytope(RationalMatrix::from_rows({{-1, -2, 1, 2, 1}, {2, 0, -2, 1, 2}}));
}

}  // namespace polycontain
