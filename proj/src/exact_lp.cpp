#include "polycontain/exact_lp.hpp"

#include <limits>
#include <optional>

#include "polycontain/error.hpp"

namespace polycontain {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// min c^T y  s.t.  M y = b, y >= 0, as a dense tableau.
class Tableau {
 public:
  Tableau(const RationalMatrix& M, const RationalVector& b) : m_(M.rows()), n_(M.cols()) {
    // Rows are sign-normalized so b >= 0; a column that is a unit vector on a
    // row seeds the basis there, every other row gets an artificial.
    RationalMatrix rows = M;
    RationalVector rhs = b;
    for (std::size_t i = 0; i < m_; ++i) {
      if (rhs[i] < 0) {
        rhs[i] = -rhs[i];
        for (std::size_t j = 0; j < n_; ++j) rows(i, j) = -rows(i, j);
      }
    }
    basis_.assign(m_, kNone);
    for (std::size_t j = 0; j < n_; ++j) {
      std::size_t hit = kNone;
      bool unit = true;
      for (std::size_t i = 0; i < m_ && unit; ++i) {
        if (rows(i, j) == 0) continue;
        if (rows(i, j) == 1 && hit == kNone) hit = i;
        else unit = false;
      }
      if (unit && hit != kNone && basis_[hit] == kNone) basis_[hit] = j;
    }
    num_art_ = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] == kNone) ++num_art_;
    width_ = n_ + num_art_ + 1;
    t_.assign(m_ * width_, Rational(0));
    std::size_t art = n_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = rows(i, j);
      at(i, width_ - 1) = rhs[i];
      if (basis_[i] == kNone) {
        at(i, art) = 1;
        basis_[i] = art++;
      }
    }
  }

  // Phase one; false when infeasible. Afterwards no artificial is basic.
  bool drive_feasible() {
    if (num_art_ > 0) {
      RationalVector cost(n_ + num_art_, Rational(0));
      for (std::size_t j = n_; j < n_ + num_art_; ++j) cost[j] = 1;
      set_cost(cost);
      run(n_ + num_art_);
      if (-cost_[width_ - 1] != 0) return false;
    }
    // Pivot zero-level artificials out, dropping rows that are redundant.
    for (std::size_t i = 0; i < m_;) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::size_t col = kNone;
      for (std::size_t j = 0; j < n_ && col == kNone; ++j)
        if (at(i, j) != 0) col = j;
      if (col != kNone) {
        pivot(i, col);
        ++i;
      } else {
        drop_row(i);
      }
    }
    return true;
  }

  // Phase two over the original columns; false when unbounded.
  bool optimize(const RationalVector& c) {
    RationalVector cost(n_ + num_art_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost[j] = c[j];
    set_cost(cost);
    return run(n_);
  }

  Rational objective() const { return -cost_[width_ - 1]; }

  RationalVector solution() const {
    RationalVector y(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) y[basis_[i]] = at(i, width_ - 1);
    return y;
  }

 private:
  Rational& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

  void set_cost(const RationalVector& cost) {
    cost_.assign(width_, Rational(0));
    for (std::size_t j = 0; j < cost.size(); ++j) cost_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) cost_[j] -= cb * at(i, j);
    }
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving variable on ties.
  bool run(std::size_t allowed_cols) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (cost_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, enter) <= 0) continue;
        Rational ratio = at(i, width_ - 1) / at(i, enter);
        if (leave == kNone || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / at(r, c);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const Rational f = at(i, c);
      for (std::size_t j = 0; j < width_; ++j)
        if (at(r, j) != 0) at(i, j) -= f * at(r, j);
    }
    if (!cost_.empty() && cost_[c] != 0) {
      const Rational f = cost_[c];
      for (std::size_t j = 0; j < width_; ++j)
        if (at(r, j) != 0) cost_[j] -= f * at(r, j);
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * width_),
             t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width_));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t num_art_ = 0;
  std::size_t width_ = 0;
  std::vector<Rational> t_;
  std::vector<std::size_t> basis_;
  RationalVector cost_;
};

// Standard form of {x | A x <= a} with x = x+ - x-, slack s: [A -A I] y = a.
RationalMatrix split_free_form(const HPolytope& p) {
  const std::size_t k = p.num_rows(), d = p.dim();
  RationalMatrix M(k, 2 * d + k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      M(i, j) = p.A()(i, j);
      M(i, d + j) = -p.A()(i, j);
    }
    M(i, 2 * d + i) = 1;
  }
  return M;
}

// A nonzero vector in the kernel of M, if any.
std::optional<RationalVector> kernel_vector(RationalMatrix M) {
  const std::size_t rows = M.rows(), cols = M.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && M(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(M(p, j), M(r, j));
    const Rational inv = 1 / M(r, c);
    for (std::size_t j = 0; j < cols; ++j) M(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || M(i, c) == 0) continue;
      const Rational f = M(i, c);
      for (std::size_t j = 0; j < cols; ++j) M(i, j) -= f * M(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (pivot_col.size() == cols) return std::nullopt;
  std::size_t free_col = 0;
  for (std::size_t pc = 0; free_col < cols; ++free_col) {
    if (pc < pivot_col.size() && pivot_col[pc] == free_col) {
      ++pc;
      continue;
    }
    break;
  }
  RationalVector v(cols, Rational(0));
  v[free_col] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -M(i, free_col);
  return v;
}

// Walks an optimal point inside its optimal face until the active rows have
// full column rank. Stops early on a lineality direction.
void move_to_vertex(const HPolytope& p, RationalVector& x) {
  const std::size_t d = p.dim();
  for (std::size_t guard = 0; guard <= d; ++guard) {
    RationalVector slack = p.a();
    RationalVector Ax = p.A() * x;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < slack.size(); ++i) {
      slack[i] -= Ax[i];
      if (slack[i] == 0) active.push_back(i);
    }
    RationalMatrix act(active.size(), d);
    for (std::size_t r = 0; r < active.size(); ++r)
      for (std::size_t j = 0; j < d; ++j) act(r, j) = p.A()(active[r], j);
    std::optional<RationalVector> dir;
    if (active.empty()) {
      dir = RationalVector(d, Rational(0));
      (*dir)[0] = 1;
    } else {
      dir = kernel_vector(std::move(act));
    }
    if (!dir) return;
    bool moved = false;
    for (int sign : {1, -1}) {
      std::optional<Rational> step;
      for (std::size_t i = 0; i < slack.size(); ++i) {
        Rational rate = 0;
        for (std::size_t j = 0; j < d; ++j) rate += p.A()(i, j) * (*dir)[j];
        rate *= sign;
        if (rate <= 0) continue;
        Rational s = slack[i] / rate;
        if (!step || s < *step) step = s;
      }
      if (step) {
        for (std::size_t j = 0; j < d; ++j) x[j] += sign * *step * (*dir)[j];
        moved = true;
        break;
      }
    }
    if (!moved) return;
  }
}

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

LpResult solve_lp(const LpProblem& prob) {
  const HPolytope& p = prob.constraints;
  const std::size_t d = p.dim();
  if (prob.objective.size() != d)
    throw Error(ErrorCode::kDimension, "LP objective length " + std::to_string(prob.objective.size()) +
                                           " != variable count " + std::to_string(d));
  Tableau tab(split_free_form(p), p.a());
  LpResult result;
  if (!tab.drive_feasible()) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  // Internally minimize; a maximization minimizes the negated objective.
  const bool maximize = prob.sense == LpSense::kMaximize;
  RationalVector c(2 * d + p.num_rows(), Rational(0));
  for (std::size_t j = 0; j < d; ++j) {
    c[j] = maximize ? Rational(-prob.objective[j]) : prob.objective[j];
    c[d + j] = -c[j];
  }
  if (!tab.optimize(c)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  RationalVector y = tab.solution();
  RationalVector x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = y[j] - y[d + j];
  move_to_vertex(p, x);
  result.status = LpStatus::kOptimal;
  result.value = dot(prob.objective, x);
  result.point = std::move(x);
  return result;
}

bool is_nonempty(const HPolytope& p) {
  Tableau tab(split_free_form(p), p.a());
  return tab.drive_feasible();
}

bool is_bounded(const HPolytope& p) {
  if (!is_nonempty(p)) throw Error(ErrorCode::kPrecondition, "boundedness test on an empty polytope");
  for (std::size_t j = 0; j < p.dim(); ++j) {
    RationalVector e(p.dim(), Rational(0));
    e[j] = 1;
    for (LpSense sense : {LpSense::kMaximize, LpSense::kMinimize}) {
      if (solve_lp({e, p, sense}).status != LpStatus::kOptimal) return false;
    }
  }
  return true;
}

bool point_in_v(const RationalVector& point, const VPolytope& q) {
  if (point.size() != q.dim())
    throw Error(ErrorCode::kDimension, "point has dimension " + std::to_string(point.size()) +
                                           " but Q has dimension " + std::to_string(q.dim()));
  const std::size_t d = q.dim(), l = q.num_points();
  RationalMatrix M(d + 1, l);
  RationalVector b(d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < l; ++j) M(i, j) = q.B()(i, j);
    b[i] = point[i];
  }
  for (std::size_t j = 0; j < l; ++j) M(d, j) = 1;
  b[d] = 1;
  Tableau tab(M, b);
  return tab.drive_feasible();
}

}  // namespace polycontain
