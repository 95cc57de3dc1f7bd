#include "polycontain/polytope.hpp"

#include "polycontain/error.hpp"

namespace polycontain {

HPolytope::HPolytope(RationalMatrix A, RationalVector a) : A_(std::move(A)), a_(std::move(a)) {
  if (A_.rows() == 0 || A_.cols() == 0)
    throw Error(ErrorCode::kDimension, "H-polytope needs k >= 1 rows and d >= 1 columns");
  if (a_.size() != A_.rows())
    throw Error(ErrorCode::kDimension, "H-polytope: right-hand side length " +
                                           std::to_string(a_.size()) + " != row count " +
                                           std::to_string(A_.rows()));
}

bool HPolytope::contains(const RationalVector& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::kDimension, "point dimension mismatch");
  for (std::size_t i = 0; i < num_rows(); ++i) {
    Rational s = a_[i];
    for (std::size_t j = 0; j < dim(); ++j) s -= A_(i, j) * x[j];
    if (s < 0) return false;
  }
  return true;
}

VPolytope::VPolytope(RationalMatrix B) : B_(std::move(B)) {
  if (B_.rows() == 0 || B_.cols() == 0)
    throw Error(ErrorCode::kDimension, "V-polytope needs d >= 1 rows and l >= 1 points");
}

RationalVector NormalizedPair::to_input_frame(const RationalVector& x) const {
  RationalVector out(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += shift[i];
  return out;
}

HPolytope polar(const VPolytope& q) {
  return HPolytope(q.B().transpose(), RationalVector(q.num_points(), Rational(1)));
}

HPolytope translate(const HPolytope& p, const RationalVector& v) {
  // x' = x + v  =>  a - A(x' - v) = (a + A v) - A x'
  RationalVector Av = p.A() * v;
  RationalVector a = p.a();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += Av[i];
  return HPolytope(p.A(), std::move(a));
}

VPolytope translate(const VPolytope& q, const RationalVector& v) {
  if (v.size() != q.dim()) throw Error(ErrorCode::kDimension, "translation length mismatch");
  RationalMatrix B = q.B();
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) B(i, j) += v[i];
  return VPolytope(std::move(B));
}

NormalizedPair centroid_normalize(const HPolytope& p, const VPolytope& q) {
  if (p.dim() != q.dim())
    throw Error(ErrorCode::kDimension, "P has dimension " + std::to_string(p.dim()) +
                                           " but Q has dimension " + std::to_string(q.dim()));
  RationalVector shift(q.dim(), Rational(0));
  for (std::size_t j = 0; j < q.num_points(); ++j)
    for (std::size_t i = 0; i < q.dim(); ++i) shift[i] += q.B()(i, j);
  const Rational inv_l(1, q.num_points());
  RationalVector neg(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    shift[i] *= inv_l;
    neg[i] = -shift[i];
  }
  return NormalizedPair{translate(p, neg), translate(q, neg), std::move(shift)};
}

NormalizedPair identity_pair(const HPolytope& p, const VPolytope& q) {
  if (p.dim() != q.dim())
    throw Error(ErrorCode::kDimension, "P has dimension " + std::to_string(p.dim()) +
                                           " but Q has dimension " + std::to_string(q.dim()));
  return NormalizedPair{p, q, RationalVector(p.dim(), Rational(0))};
}

HPolytope scale(const HPolytope& p, const Rational& r) {
  if (r <= 0) throw Error(ErrorCode::kArgument, "scale factor must be positive, got " + to_string(r));
  RationalVector a = p.a();
  for (auto& v : a) v *= r;
  return HPolytope(p.A(), std::move(a));
}

VPolytope scale(const VPolytope& q, const Rational& r) {
  if (r <= 0) throw Error(ErrorCode::kArgument, "scale factor must be positive, got " + to_string(r));
  RationalMatrix B = q.B();
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) B(i, j) *= r;
  return VPolytope(std::move(B));
}

std::size_t affine_dimension(const VPolytope& q) {
  if (q.num_points() < 2) return 0;
  RationalMatrix diff(q.dim(), q.num_points() - 1);
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 1; j < q.num_points(); ++j) diff(i, j - 1) = q.B()(i, j) - q.B()(i, 0);
  return rank(std::move(diff));
}

}  // namespace polycontain
