#include "polycontain/vertex_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "polycontain/error.hpp"
#include "polycontain/exact_lp.hpp"

namespace polycontain {
namespace {

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

// Depth-first search over row subsets, keeping the chosen rows in reduced
// row echelon form so a dependent prefix prunes its whole subtree.
class SubsetSolver {
 public:
  explicit SubsetSolver(const HPolytope& p) : p_(p), d_(p.dim()) {}

  std::set<RationalVector> run() {
    std::vector<RationalVector> rows;
    std::vector<std::size_t> pivots;
    descend(0, rows, pivots);
    return std::move(found_);
  }

 private:
  void descend(std::size_t next, const std::vector<RationalVector>& rows,
               const std::vector<std::size_t>& pivots) {
    if (rows.size() == d_) {
      RationalVector x(d_);
      for (std::size_t r = 0; r < d_; ++r) x[pivots[r]] = rows[r][d_];
      if (p_.contains(x)) found_.insert(std::move(x));
      return;
    }
    const std::size_t remaining = d_ - rows.size();
    for (std::size_t i = next; i + remaining <= p_.num_rows(); ++i) {
      RationalVector row(d_ + 1);
      for (std::size_t j = 0; j < d_; ++j) row[j] = p_.A()(i, j);
      row[d_] = p_.a()[i];
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const Rational f = row[pivots[r]];
        if (f == 0) continue;
        for (std::size_t j = 0; j <= d_; ++j) row[j] -= f * rows[r][j];
      }
      std::size_t pc = 0;
      while (pc < d_ && row[pc] == 0) ++pc;
      if (pc == d_) continue;
      const Rational inv = 1 / row[pc];
      for (auto& v : row) v *= inv;
      std::vector<RationalVector> next_rows = rows;
      for (auto& other : next_rows) {
        const Rational f = other[pc];
        if (f == 0) continue;
        for (std::size_t j = 0; j <= d_; ++j) other[j] -= f * row[j];
      }
      next_rows.push_back(std::move(row));
      std::vector<std::size_t> next_pivots = pivots;
      next_pivots.push_back(pc);
      descend(i + 1, next_rows, next_pivots);
    }
  }

  const HPolytope& p_;
  std::size_t d_;
  std::set<RationalVector> found_;
};

void require_oracle_preconditions(const HPolytope& p, const VPolytope& q) {
  if (p.dim() != q.dim())
    throw Error(ErrorCode::kDimension, "P has dimension " + std::to_string(p.dim()) +
                                           " but Q has dimension " + std::to_string(q.dim()));
  if (!is_nonempty(p)) throw Error(ErrorCode::kPrecondition, "P is empty");
  if (!is_bounded(p)) throw Error(ErrorCode::kPrecondition, "P is unbounded");
  if (!origin_in_interior(q))
    throw Error(ErrorCode::kPrecondition, "the origin is not an interior point of Q");
}

}  // namespace

VertexSet enumerate_vertices(const HPolytope& p, const OracleLimits& limits) {
  if (!is_nonempty(p))
    throw Error(ErrorCode::kPrecondition, "vertex enumeration needs a nonempty polytope");
  if (!is_bounded(p))
    throw Error(ErrorCode::kPrecondition, "vertex enumeration needs a bounded polytope");
  const std::uint64_t subsets = binomial_saturating(p.num_rows(), p.dim());
  if (!limits.force && subsets > limits.max_subsets)
    throw Error(ErrorCode::kGuard, "vertex enumeration would examine " + std::to_string(subsets) +
                                       " row subsets (limit " + std::to_string(limits.max_subsets) +
                                       "); use --force-oracle to override");
  std::set<RationalVector> found = SubsetSolver(p).run();
  return VertexSet{std::vector<RationalVector>(found.begin(), found.end()), p};
}

bool origin_in_interior(const VPolytope& q) {
  if (affine_dimension(q) != q.dim()) return false;
  HPolytope pol = polar(q);
  return is_bounded(pol);
}

BilinearOptimum mu_star(const HPolytope& p, const VPolytope& q, const OracleLimits& limits) {
  require_oracle_preconditions(p, q);
  const VertexSet vp = enumerate_vertices(p, limits);
  const VertexSet vq = enumerate_vertices(polar(q), limits);
  const std::uint64_t pairs = static_cast<std::uint64_t>(vp.vertices.size()) * vq.vertices.size();
  if (!limits.force && pairs > limits.max_pairs)
    throw Error(ErrorCode::kGuard, "oracle would scan " + std::to_string(pairs) +
                                       " vertex pairs (limit " + std::to_string(limits.max_pairs) +
                                       "); use --force-oracle to override");
  // Reverse lexicographic scan: ties go to the largest x, then the largest z.
  BilinearOptimum best;
  bool have = false;
  for (auto xi = vp.vertices.rbegin(); xi != vp.vertices.rend(); ++xi) {
    for (auto zi = vq.vertices.rbegin(); zi != vq.vertices.rend(); ++zi) {
      const RationalVector& x = *xi;
      const RationalVector& z = *zi;
      Rational v = dot(x, z);
      if (!have || v > best.mu_star) {
        best.mu_star = v;
        best.arg_x = x;
        best.arg_z = z;
        best.optimal_pairs = 1;
        have = true;
      } else if (v == best.mu_star) {
        ++best.optimal_pairs;
      }
    }
  }
  best.pairs_scanned = pairs;
  return best;
}

ContainmentVerdict decide_containment_oracle(const HPolytope& p, const VPolytope& q,
                                             const OracleLimits& limits) {
  if (p.dim() != q.dim())
    throw Error(ErrorCode::kDimension, "P has dimension " + std::to_string(p.dim()) +
                                           " but Q has dimension " + std::to_string(q.dim()));
  ContainmentVerdict verdict;
  if (!is_nonempty(p)) {
    verdict.status = VerdictStatus::kCertifiedContained;
    verdict.vacuous = true;
    verdict.notes.push_back("P is empty; containment holds vacuously");
    return verdict;
  }
  if (!is_bounded(p)) throw Error(ErrorCode::kPrecondition, "P is unbounded");

  if (origin_in_interior(q)) {
    BilinearOptimum opt = mu_star(p, q, limits);
    verdict.mu_star = opt.mu_star;
    if (opt.mu_star > 1) {
      verdict.status = VerdictStatus::kCertifiedNotContained;
      verdict.witness = opt.arg_x;
      verdict.strong_containment = false;
    } else {
      verdict.status = VerdictStatus::kCertifiedContained;
      verdict.strong_containment = opt.mu_star < 1;
      if (opt.mu_star == 1) verdict.notes.push_back("boundary contact: P touches the boundary of Q");
    }
    return verdict;
  }

  // Q is lower dimensional or misses the origin: test every vertex of P directly.
  verdict.notes.push_back("origin not interior to Q; decided by per-vertex membership");
  for (const auto& v : enumerate_vertices(p, limits).vertices) {
    if (!point_in_v(v, q)) {
      verdict.status = VerdictStatus::kCertifiedNotContained;
      verdict.witness = v;
      return verdict;
    }
  }
  verdict.status = VerdictStatus::kCertifiedContained;
  return verdict;
}

DistanceReport oriented_distance(const HPolytope& p, const VPolytope& q, const OracleLimits& limits) {
  BilinearOptimum opt = mu_star(p, q, limits);
  double norm = 0.0;
  for (const auto& v : opt.arg_z) norm += to_double(v) * to_double(v);
  norm = std::sqrt(norm);
  return DistanceReport{to_double(Rational(1 - opt.mu_star)) / norm, opt.arg_x, opt.arg_z};
}

BilinearOptimum alternating_ascent(const HPolytope& p, const VPolytope& q, int starts,
                                   std::uint64_t seed) {
  require_oracle_preconditions(p, q);
  const HPolytope pol = polar(q);
  const std::size_t d = p.dim();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-1'000'000, 1'000'000);

  BilinearOptimum best;
  bool have = false;
  const int runs = std::max(starts, 1);
  for (int s = 0; s < runs; ++s) {
    RationalVector z(d, Rational(0));
    if (starts > 0) {
      RationalVector c(d);
      for (auto& v : c) v = Rational(entry(rng), 1'000'000);
      z = solve_lp({c, pol, LpSense::kMaximize}).point;
    }
    RationalVector x;
    Rational value;
    bool first = true;
    for (;;) {
      RationalVector nx = solve_lp({z, p, LpSense::kMaximize}).point;
      LpResult zr = solve_lp({nx, pol, LpSense::kMaximize});
      if (!first && zr.value <= value) break;
      x = std::move(nx);
      z = std::move(zr.point);
      value = zr.value;
      first = false;
    }
    if (!have || value > best.mu_star) {
      best.mu_star = value;
      best.arg_x = x;
      best.arg_z = z;
      have = true;
    }
  }
  return best;
}

}  // namespace polycontain
