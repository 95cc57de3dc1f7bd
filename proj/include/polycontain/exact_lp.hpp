#pragma once

#include "polycontain/polytope.hpp"
#include "polycontain/rational.hpp"

namespace polycontain {

enum class LpSense { kMaximize, kMinimize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus s);

/// Optimize objective^T x over the H-polytope {x | a - A x >= 0}.
struct LpProblem {
  RationalVector objective;
  HPolytope constraints;
  LpSense sense = LpSense::kMaximize;
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;        // set when optimal
  RationalVector point;  // set when optimal; a vertex whenever the polyhedron is pointed
};

/// Two-phase dense tableau simplex in exact arithmetic with Bland's rule.
LpResult solve_lp(const LpProblem& prob);

bool is_nonempty(const HPolytope& p);

/// Every coordinate bounded above and below over p. Throws kPrecondition if p is empty.
bool is_bounded(const HPolytope& p);

/// Exists lambda >= 0, sum lambda = 1, B lambda = point.
bool point_in_v(const RationalVector& point, const VPolytope& q);

}  // namespace polycontain
