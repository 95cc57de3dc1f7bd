#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "polycontain/rational.hpp"

namespace polycontain {

/// {x in R^d | a - A x >= 0} with k rows.
class HPolytope {
 public:
  HPolytope(RationalMatrix A, RationalVector a);

  const RationalMatrix& A() const { return A_; }
  const RationalVector& a() const { return a_; }
  std::size_t dim() const { return A_.cols(); }
  std::size_t num_rows() const { return A_.rows(); }

  /// Exact test a - A x >= 0.
  bool contains(const RationalVector& x) const;

  bool operator==(const HPolytope&) const = default;

 private:
  RationalMatrix A_;
  RationalVector a_;
};

/// conv of the columns of B (d x l).
class VPolytope {
 public:
  explicit VPolytope(RationalMatrix B);

  const RationalMatrix& B() const { return B_; }
  std::size_t dim() const { return B_.rows(); }
  std::size_t num_points() const { return B_.cols(); }
  RationalVector point(std::size_t j) const { return B_.col(j); }

  bool operator==(const VPolytope&) const = default;

 private:
  RationalMatrix B_;
};

/// P and Q translated by the same shift so that the origin is the centroid
/// of Q's generators.
struct NormalizedPair {
  HPolytope p;
  VPolytope q;
  RationalVector shift;

  std::size_t dim() const { return p.dim(); }
  /// Maps a point of the translated frame back to input coordinates.
  RationalVector to_input_frame(const RationalVector& x) const;
};

/// The polar of conv(B) as {z | 1 - B^T z >= 0}.
HPolytope polar(const VPolytope& q);

NormalizedPair centroid_normalize(const HPolytope& p, const VPolytope& q);

/// Pair taken as-is with a zero shift; the caller vouches for 0 in Q.
NormalizedPair identity_pair(const HPolytope& p, const VPolytope& q);

HPolytope translate(const HPolytope& p, const RationalVector& v);
VPolytope translate(const VPolytope& q, const RationalVector& v);

/// Dilation about the origin: a <- r a. Requires r > 0.
HPolytope scale(const HPolytope& p, const Rational& r);
VPolytope scale(const VPolytope& q, const Rational& r);

/// Rank of [b2 - b1, ..., bl - b1].
std::size_t affine_dimension(const VPolytope& q);

// JSON polytope files: {"type":"H","A":[[...]],"a":[...]} / {"type":"V","B":[[...]]}.
using AnyPolytope = std::variant<HPolytope, VPolytope>;

AnyPolytope parse_polytope(std::string_view json_text);
AnyPolytope load_polytope(const std::string& path);
HPolytope load_h_polytope(const std::string& path);
VPolytope load_v_polytope(const std::string& path);
std::string to_json(const HPolytope& p);
std::string to_json(const VPolytope& q);

}  // namespace polycontain
