#pragma once

#include <cstddef>
#include <cstdint>

#include "polycontain/polytope.hpp"
#include "polycontain/verdict.hpp"

namespace polycontain {

struct VertexSet {
  std::vector<RationalVector> vertices;  // lexicographically sorted, distinct
  HPolytope source;
};

/// Best vertex pair of sup{x^T z | x in P, z in polar(Q)}.
struct BilinearOptimum {
  Rational mu_star;
  RationalVector arg_x;
  RationalVector arg_z;
  std::size_t optimal_pairs = 0;  // vertex pairs attaining mu_star (exhaustive scan only)
  std::size_t pairs_scanned = 0;
};

struct DistanceReport {
  double d_pq = 0.0;
  RationalVector vertex;
  RationalVector facet_normal;
};

/// Work limits that keep the brute-force oracle at desk scale.
struct OracleLimits {
  std::uint64_t max_subsets = 20'000'000;  // d-subsets of rows per enumeration
  std::uint64_t max_pairs = 1'000'000;     // |V(P)| * |V(polar Q)|
  bool force = false;                      // ignore both limits
};

/// Vertices of a nonempty bounded H-polytope by exhaustive d-subset solves.
VertexSet enumerate_vertices(const HPolytope& p, const OracleLimits& limits = {});

/// affine_dimension(q) == d and polar(q) bounded.
bool origin_in_interior(const VPolytope& q);

BilinearOptimum mu_star(const HPolytope& p, const VPolytope& q, const OracleLimits& limits = {});

ContainmentVerdict decide_containment_oracle(const HPolytope& p, const VPolytope& q,
                                             const OracleLimits& limits = {});

DistanceReport oriented_distance(const HPolytope& p, const VPolytope& q,
                                 const OracleLimits& limits = {});

/// Alternating LP ascent from random starts in polar(Q). The value is a lower
/// bound on mu_star; starts == 0 means one deterministic start at z = 0.
BilinearOptimum alternating_ascent(const HPolytope& p, const VPolytope& q, int starts,
                                   std::uint64_t seed);

}  // namespace polycontain
