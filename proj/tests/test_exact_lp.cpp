#include <doctest.h>

#include <random>

#include "polycontain/error.hpp"
#include "polycontain/exact_lp.hpp"
#include "polycontain/instances.hpp"
#include "random_instances.hpp"

using namespace polycontain;

namespace {

HPolytope h(std::vector<RationalVector> rows, RationalVector a) {
  return HPolytope(RationalMatrix::from_rows(rows), std::move(a));
}

}  // namespace

TEST_CASE("solve_lp basics") {
  SUBCASE("max x1 over the unit square") {
    const LpResult r = solve_lp({{1, 0}, h_cube(2)});
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.value == 1);
    CHECK(r.point[0] == 1);
    CHECK(h_cube(2).contains(r.point));
  }
  SUBCASE("infeasible") {
    // x1 >= 1 and x1 <= 0
    const LpResult r = solve_lp({{1}, h({{-1}, {1}}, {-1, 0})});
    CHECK(r.status == LpStatus::kInfeasible);
  }
  SUBCASE("unbounded") {
    // x2 <= 0 only
    const LpResult r = solve_lp({{1, 0}, h({{0, 1}}, {0})});
    CHECK(r.status == LpStatus::kUnbounded);
  }
  SUBCASE("minimize") {
    const LpResult r = solve_lp({{1, 1}, h_cube(2, 3), LpSense::kMinimize});
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.value == -6);
  }
  SUBCASE("degenerate vertex") {
    // three constraints through (1, 1)
    const LpResult r = solve_lp({{1, 1}, h({{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}}, {1, 1, 2, 0, 0})});
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.value == 2);
    CHECK(r.point == RationalVector{1, 1});
  }
  SUBCASE("objective length") { CHECK_THROWS_AS(solve_lp({{1}, h_cube(2)}), Error); }
}

TEST_CASE("optimal LP points are vertices") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 30; ++it) {
    auto inst = pc_test::random_instance(rng);
    const HPolytope& p = inst.p;
    RationalVector c(p.dim());
    for (auto& x : c) x = pc_test::random_rational(rng, 5, 3);
    const LpResult mx = solve_lp({c, p, LpSense::kMaximize});
    REQUIRE(mx.status == LpStatus::kOptimal);
    CHECK(p.contains(mx.point));
    CHECK(dot(c, mx.point) == mx.value);
    // active rows have full rank
    std::vector<RationalVector> active;
    for (std::size_t r = 0; r < p.num_rows(); ++r)
      if (dot(p.A().row(r), mx.point) == p.a()[r]) active.push_back(p.A().row(r));
    REQUIRE(!active.empty());
    CHECK(rank(RationalMatrix::from_rows(active)) == p.dim());
    // max c = -min (-c)
    RationalVector neg = c;
    for (auto& x : neg) x = -x;
    const LpResult mn = solve_lp({neg, p, LpSense::kMinimize});
    REQUIRE(mn.status == LpStatus::kOptimal);
    CHECK(mx.value == -mn.value);
  }
}

TEST_CASE("nonemptiness") {
  CHECK(is_nonempty(h_cube(3)));
  CHECK_FALSE(is_nonempty(h({{-1}, {1}}, {-1, 0})));
  CHECK(is_nonempty(h({{1}, {-1}}, {0, 0})));
}

TEST_CASE("boundedness") {
  CHECK(is_bounded(h_cube(2)));
  CHECK_FALSE(is_bounded(h({{-1, 0}}, {0})));
  CHECK(is_bounded(polar(v_cross(3, 2))));
  CHECK(is_bounded(polar(v_cube(2))));
  try {
    is_bounded(h({{-1}, {1}}, {-1, 0}));
    FAIL("empty polytope accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrecondition);
  }
}

TEST_CASE("point_in_v") {
  const VPolytope cross = v_cross(2, 1);
  CHECK_FALSE(point_in_v({1, 1}, cross));
  CHECK(point_in_v({0, 0}, cross));
  for (std::size_t j = 0; j < cross.num_points(); ++j) CHECK(point_in_v(cross.point(j), cross));
  CHECK(point_in_v({Rational(1, 2), Rational(1, 2)}, cross));
  CHECK_FALSE(point_in_v({Rational(1, 2), Rational(51, 100)}, cross));
  CHECK_THROWS_AS(point_in_v({0, 0, 0}, cross), Error);
}

TEST_CASE("point_in_v agrees with the facets of Q") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 20; ++it) {
    auto inst = pc_test::random_instance(rng);
    // facets of Q are the vertices of its polar: Q = {x | f^T x <= 1}
    const VertexSet facets = enumerate_vertices(polar(inst.q));
    for (int s = 0; s < 5; ++s) {
      RationalVector x(inst.q.dim());
      for (auto& c : x) c = pc_test::random_rational(rng, 6, 4);
      bool inside = true;
      for (const auto& f : facets.vertices) inside = inside && dot(f, x) <= 1;
      CHECK(point_in_v(x, inst.q) == inside);
    }
  }
}
