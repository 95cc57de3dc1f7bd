#include "polycontain/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "polycontain/error.hpp"

namespace polycontain {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr int kRefinementSteps = 2;

struct Triplet {
  std::size_t i, j;
  double v;
};

// Constraint matrix of one row restricted to one block.
struct RowSlice {
  std::size_t row;
  std::vector<Triplet> upper;
  std::vector<std::size_t> support;  // columns with a nonzero
  std::vector<std::vector<std::pair<std::size_t, double>>> column;  // (p, A[p][c]) per support column
};

struct Block {
  std::size_t n = 0;
  std::vector<RowSlice> rows;
  MatrixXd cost;
};

std::vector<Block> build_blocks(const SdpProblem& prob) {
  std::vector<Block> blocks(prob.block_sizes.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].n = prob.block_sizes[b];
    blocks[b].cost = MatrixXd::Zero(static_cast<Eigen::Index>(blocks[b].n),
                                    static_cast<Eigen::Index>(blocks[b].n));
  }
  auto check_entry = [&](const BlockEntry& e) {
    if (e.block >= blocks.size()) throw Error(ErrorCode::kDimension, "SDP entry refers to a missing block");
    if (std::max(e.i, e.j) >= blocks[e.block].n)
      throw Error(ErrorCode::kDimension, "SDP entry index outside its block");
  };
  // Sorted by (block, row) so each row slice is contiguous.
  std::vector<BlockEntry> sorted = prob.entries;
  std::stable_sort(sorted.begin(), sorted.end(), [](const BlockEntry& a, const BlockEntry& b) {
    return a.block != b.block ? a.block < b.block : a.row < b.row;
  });
  for (const auto& e : sorted) {
    check_entry(e);
    if (e.row >= prob.num_rows) throw Error(ErrorCode::kDimension, "SDP entry refers to a missing row");
    Block& blk = blocks[e.block];
    if (blk.rows.empty() || blk.rows.back().row != e.row) blk.rows.push_back(RowSlice{e.row, {}, {}, {}});
    const std::size_t i = std::min(e.i, e.j), j = std::max(e.i, e.j);
    blk.rows.back().upper.push_back({i, j, e.value});
  }
  for (auto& blk : blocks) {
    for (auto& rs : blk.rows) {
      std::vector<std::vector<std::pair<std::size_t, double>>> cols(blk.n);
      for (const auto& t : rs.upper) {
        cols[t.j].push_back({t.i, t.v});
        if (t.i != t.j) cols[t.i].push_back({t.j, t.v});
      }
      for (std::size_t c = 0; c < blk.n; ++c) {
        if (cols[c].empty()) continue;
        rs.support.push_back(c);
        rs.column.push_back(std::move(cols[c]));
      }
    }
  }
  for (const auto& e : prob.block_cost) {
    check_entry(e);
    const auto i = static_cast<Eigen::Index>(e.i), j = static_cast<Eigen::Index>(e.j);
    blocks[e.block].cost(i, j) += e.value;
    if (i != j) blocks[e.block].cost(j, i) += e.value;
  }
  return blocks;
}

double inner(const MatrixXd& a, const MatrixXd& b) { return (a.array() * b.array()).sum(); }

double slice_dot(const RowSlice& rs, const MatrixXd& m) {
  double s = 0.0;
  for (const auto& t : rs.upper) {
    const auto i = static_cast<Eigen::Index>(t.i), j = static_cast<Eigen::Index>(t.j);
    s += t.i == t.j ? t.v * m(i, i) : t.v * (m(i, j) + m(j, i));
  }
  return s;
}

class Solver {
 public:
  Solver(const SdpProblem& prob, const SolverOptions& opts)
      : prob_(prob), opts_(opts), blocks_(build_blocks(prob)), m_(prob.num_rows), f_(prob.num_free) {
    if (m_ == 0) throw Error(ErrorCode::kArgument, "SDP needs at least one equality row");
    if (prob.rhs.size() != m_) throw Error(ErrorCode::kDimension, "SDP rhs length != row count");
    if (prob.free_cost.size() != f_) throw Error(ErrorCode::kDimension, "SDP free cost length != free count");
    rhs_ = Eigen::Map<const VectorXd>(prob.rhs.data(), static_cast<Eigen::Index>(m_));
    cfree_ = f_ ? VectorXd(Eigen::Map<const VectorXd>(prob.free_cost.data(), static_cast<Eigen::Index>(f_)))
                : VectorXd();
    F_ = MatrixXd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(f_));
    for (const auto& e : prob.free_entries) {
      if (e.row >= m_ || e.var >= f_) throw Error(ErrorCode::kDimension, "free-variable entry out of range");
      F_(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.var)) += e.value;
    }
    total_dim_ = 0;
    cost_scale_ = cfree_.size() ? cfree_.cwiseAbs().maxCoeff() : 0.0;
    for (const auto& blk : blocks_) {
      total_dim_ += blk.n;
      if (blk.n) cost_scale_ = std::max(cost_scale_, blk.cost.cwiseAbs().maxCoeff());
    }
    rhs_scale_ = rhs_.size() ? rhs_.cwiseAbs().maxCoeff() : 0.0;
  }

  ConicSolution run();

 private:
  // Cholesky factor of the constraint Gram matrix (A A^*)_rs = <A_r, A_s>.
  void factor_constraint_gram() {
    MatrixXd AAt = MatrixXd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const Block& blk = blocks_[b];
      for (std::size_t a = 0; a < blk.rows.size(); ++a) {
        VectorXd unit = VectorXd::Zero(static_cast<Eigen::Index>(m_));
        unit(static_cast<Eigen::Index>(blk.rows[a].row)) = 1.0;
        const MatrixXd Ar = adjoint(b, unit);
        for (std::size_t c = a; c < blk.rows.size(); ++c) {
          const double v = slice_dot(blk.rows[c], Ar);
          const auto r = static_cast<Eigen::Index>(blk.rows[a].row);
          const auto s = static_cast<Eigen::Index>(blk.rows[c].row);
          AAt(r, s) += v;
          if (c != a) AAt(s, r) += v;
        }
      }
    }
    AAt.diagonal().array() += 1e-14 * std::max(1.0, AAt.diagonal().maxCoeff());
    gram_.compute(AAt);
  }

  Eigen::LDLT<MatrixXd> gram_;

 private:
  VectorXd apply_blocks(const std::vector<MatrixXd>& mats) const {
    VectorXd out = VectorXd::Zero(static_cast<Eigen::Index>(m_));
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (const auto& rs : blocks_[b].rows) out(static_cast<Eigen::Index>(rs.row)) += slice_dot(rs, mats[b]);
    return out;
  }

  MatrixXd adjoint(std::size_t b, const VectorXd& y) const {
    const Block& blk = blocks_[b];
    MatrixXd out = MatrixXd::Zero(static_cast<Eigen::Index>(blk.n), static_cast<Eigen::Index>(blk.n));
    for (const auto& rs : blk.rows) {
      const double yr = y(static_cast<Eigen::Index>(rs.row));
      if (yr == 0.0) continue;
      for (const auto& t : rs.upper) {
        const auto i = static_cast<Eigen::Index>(t.i), j = static_cast<Eigen::Index>(t.j);
        out(i, j) += yr * t.v;
        if (i != j) out(j, i) += yr * t.v;
      }
    }
    return out;
  }

  // M_rs = tr(A_r X A_s S^-1), accumulated block by block.
  MatrixXd schur(const std::vector<MatrixXd>& X, const std::vector<MatrixXd>& Sinv) const {
    MatrixXd M = MatrixXd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const Block& blk = blocks_[b];
      const auto n = static_cast<Eigen::Index>(blk.n);
      MatrixXd W, Ssub, G;
      for (std::size_t a = 0; a < blk.rows.size(); ++a) {
        const RowSlice& ra = blk.rows[a];
        const auto k = static_cast<Eigen::Index>(ra.support.size());
        W.setZero(n, k);
        Ssub.resize(k, n);
        for (Eigen::Index c = 0; c < k; ++c) {
          for (const auto& [p, v] : ra.column[static_cast<std::size_t>(c)])
            W.col(c) += v * X[b].col(static_cast<Eigen::Index>(p));
          Ssub.row(c) = Sinv[b].row(static_cast<Eigen::Index>(ra.support[static_cast<std::size_t>(c)]));
        }
        G.noalias() = W * Ssub;
        const auto r = static_cast<Eigen::Index>(ra.row);
        for (std::size_t c = a; c < blk.rows.size(); ++c) {
          const double val = slice_dot(blk.rows[c], G);
          const auto s = static_cast<Eigen::Index>(blk.rows[c].row);
          M(r, s) += val;
          if (c != a) M(s, r) += val;
        }
      }
    }
    return M;
  }

  const SdpProblem& prob_;
  const SolverOptions& opts_;
  std::vector<Block> blocks_;
  std::size_t m_;
  std::size_t f_;
  std::size_t total_dim_ = 0;
  VectorXd rhs_;
  VectorXd cfree_;
  MatrixXd F_;
  double cost_scale_ = 0.0;
  double rhs_scale_ = 0.0;
};

MatrixXd sym(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }

// Largest alpha <= inf with X + alpha dX PSD, given the Cholesky factor of X.
double max_step(const Eigen::LLT<MatrixXd>& chol, const MatrixXd& dX) {
  if (dX.rows() == 0) return std::numeric_limits<double>::infinity();
  MatrixXd t = chol.matrixL().solve(dX);
  t = chol.matrixL().solve(t.transpose()).transpose();
  const double lmin = min_eigenvalue(sym(t));
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

ConicSolution Solver::run() {
  const std::size_t nb = blocks_.size();
  const double init = 1.0 + rhs_scale_;
  std::vector<MatrixXd> X(nb), S(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const auto n = static_cast<Eigen::Index>(blocks_[b].n);
    X[b] = init * MatrixXd::Identity(n, n);
    S[b] = init * MatrixXd::Identity(n, n);
  }
  VectorXd u = VectorXd::Zero(static_cast<Eigen::Index>(f_));
  VectorXd y = VectorXd::Zero(static_cast<Eigen::Index>(m_));

  factor_constraint_gram();
  ConicSolution sol;
  int stalled = 0;
  // Best iterate by merit max(pres, dres, gap); restored when the run ends
  // without meeting the tolerances.
  struct Snapshot {
    std::vector<MatrixXd> X;
    VectorXd u, y;
    double objective, dual_objective, gap, pres, dres;
    int iteration;
  };
  Snapshot best{X, u, y, 0.0, 0.0, 0.0, 0.0, 0.0, 0};
  double best_merit = std::numeric_limits<double>::infinity();
  double reference_progress = std::numeric_limits<double>::infinity();
  int since_improvement = 0;
  int since_best = 0;
  for (int iter = 0;; ++iter) {
    // Residuals and progress measures.
    VectorXd rp = rhs_ - apply_blocks(X) - F_ * u;
    std::vector<MatrixXd> Rd(nb);
    double dres_abs = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      Rd[b] = blocks_[b].cost - adjoint(b, y) - S[b];
      if (blocks_[b].n) dres_abs = std::max(dres_abs, Rd[b].cwiseAbs().maxCoeff());
    }
    VectorXd rf = f_ ? VectorXd(cfree_ - F_.transpose() * y) : VectorXd();
    if (f_) dres_abs = std::max(dres_abs, rf.cwiseAbs().maxCoeff());

    double pobj = f_ ? cfree_.dot(u) : 0.0;
    double comp = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      pobj += inner(blocks_[b].cost, X[b]);
      comp += inner(X[b], S[b]);
    }
    const double dobj = rhs_.dot(y);
    const double mu = total_dim_ ? comp / static_cast<double>(total_dim_) : 0.0;
    sol.primal_residual = (rp.size() ? rp.cwiseAbs().maxCoeff() : 0.0) / (1.0 + rhs_scale_);
    sol.dual_residual = dres_abs / (1.0 + cost_scale_);
    sol.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    sol.objective = pobj;
    sol.dual_objective = dobj;
    sol.iterations = iter;

    if (opts_.verbose)
      std::fprintf(stderr, "%3d  pobj %+.10e  dobj %+.10e  mu %.2e  pres %.2e  dres %.2e\n", iter, pobj,
                   dobj, mu, sol.primal_residual, sol.dual_residual);

    if (sol.primal_residual <= opts_.feas_tol && sol.dual_residual <= opts_.feas_tol &&
        sol.gap <= opts_.gap_tol) {
      sol.status = SolveStatus::kOptimal;
      break;
    }
    // Snapshots use the full merit; stall detection uses complementarity in
    // place of the objective gap, which is meaningless while infeasible.
    const double merit = std::max({sol.primal_residual, sol.dual_residual, sol.gap});
    if (merit < best_merit) {
      best_merit = merit;
      best = {X, u, y, pobj, dobj, sol.gap, sol.primal_residual, sol.dual_residual, iter};
      since_best = 0;
    } else {
      ++since_best;
    }
    const double progress =
        std::max({sol.primal_residual, sol.dual_residual, mu / (1.0 + std::abs(pobj))});
    if (progress < 0.5 * reference_progress) {
      reference_progress = progress;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (best_merit <= opts_.near_tol && since_best >= opts_.stall_window) since_improvement = opts_.stall_window;
    if (since_improvement >= opts_.stall_window) {
      sol.status = SolveStatus::kNumericalFailure;
      sol.message = "no progress over " + std::to_string(opts_.stall_window) + " iterations at iteration " +
                    std::to_string(iter);
      break;
    }
    if (iter >= opts_.max_iter) {
      sol.status = SolveStatus::kMaxIterations;
      sol.message = "iteration limit " + std::to_string(opts_.max_iter) + " reached";
      break;
    }

    // Schur complement system.
    std::vector<MatrixXd> Sinv(nb);
    std::vector<Eigen::LLT<MatrixXd>> cholX(nb), cholS(nb);
    bool ok = true;
    for (std::size_t b = 0; b < nb && ok; ++b) {
      cholX[b].compute(X[b]);
      cholS[b].compute(S[b]);
      ok = cholX[b].info() == Eigen::Success && cholS[b].info() == Eigen::Success;
      if (ok) Sinv[b] = cholS[b].solve(MatrixXd::Identity(S[b].rows(), S[b].cols()));
    }
    if (!ok) {
      sol.status = SolveStatus::kNumericalFailure;
      sol.message = "iterate lost positive definiteness at iteration " + std::to_string(iter);
      break;
    }
    const MatrixXd M = schur(X, Sinv);
    const double reg = opts_.regularization * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
    MatrixXd Mreg = M;
    Mreg.diagonal().array() += reg;
    Eigen::LLT<MatrixXd> cholM(Mreg);
    if (cholM.info() != Eigen::Success) {
      sol.status = SolveStatus::kNumericalFailure;
      sol.message = "Schur complement not positive definite at iteration " + std::to_string(iter);
      break;
    }
    MatrixXd MinvF;
    Eigen::LDLT<MatrixXd> cholK;
    if (f_) {
      MinvF = cholM.solve(F_);
      cholK.compute(F_.transpose() * MinvF);
    }

    struct Direction {
      std::vector<MatrixXd> dX, dS;
      VectorXd dy, du;
    };
    // Solves for the direction whose complementarity target is Rc per block.
    auto direction = [&](const std::vector<MatrixXd>& Rc) {
      Direction dir;
      dir.dX.resize(nb);
      dir.dS.resize(nb);
      std::vector<MatrixXd> Z(nb);
      for (std::size_t b = 0; b < nb; ++b) Z[b] = sym((Rc[b] - X[b] * Rd[b]) * Sinv[b]);
      const VectorXd h = rp - apply_blocks(Z);
      // [M F; F^T 0] [dy; du] = [h; rf], solved through the regularized
      // factor and refined against the unregularized M.
      auto solve_kkt = [&](const VectorXd& top, const VectorXd& bottom, VectorXd& dy, VectorXd& du) {
        VectorXd Minv_top = cholM.solve(top);
        if (f_) {
          du = cholK.solve(VectorXd(F_.transpose() * Minv_top - bottom));
          dy = Minv_top - MinvF * du;
        } else {
          du = VectorXd();
          dy = Minv_top;
        }
      };
      solve_kkt(h, rf, dir.dy, dir.du);
      for (int refine = 0; refine < kRefinementSteps; ++refine) {
        VectorXd r_top = h - M * dir.dy;
        if (f_) r_top -= F_ * dir.du;
        VectorXd r_bottom = f_ ? VectorXd(rf - F_.transpose() * dir.dy) : VectorXd();
        VectorXd cy, cu;
        solve_kkt(r_top, r_bottom, cy, cu);
        dir.dy += cy;
        if (f_) dir.du += cu;
      }
      for (std::size_t b = 0; b < nb; ++b) {
        dir.dS[b] = Rd[b] - adjoint(b, dir.dy);
        dir.dX[b] = sym((Rc[b] - X[b] * dir.dS[b]) * Sinv[b]);
      }
      // Rounding in dX grows with cond(S); restore A(dX) + F du = rp by the
      // least-norm correction dX += A^*(w), (A A^*) w = defect.
      VectorXd defect = rp - apply_blocks(dir.dX);
      if (f_) defect -= F_ * dir.du;
      const VectorXd w = gram_.solve(defect);
      for (std::size_t b = 0; b < nb; ++b) dir.dX[b] += adjoint(b, w);
      return dir;
    };
    auto steps = [&](const Direction& dir, double& ap, double& ad) {
      ap = std::numeric_limits<double>::infinity();
      ad = ap;
      for (std::size_t b = 0; b < nb; ++b) {
        ap = std::min(ap, max_step(cholX[b], dir.dX[b]));
        ad = std::min(ad, max_step(cholS[b], dir.dS[b]));
      }
    };

    // Predictor: affine scaling direction.
    std::vector<MatrixXd> Rc(nb);
    for (std::size_t b = 0; b < nb; ++b) Rc[b] = -X[b] * S[b];
    Direction aff = direction(Rc);
    double ap, ad;
    steps(aff, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double comp_aff = 0.0;
    for (std::size_t b = 0; b < nb; ++b) comp_aff += inner(X[b] + ap * aff.dX[b], S[b] + ad * aff.dS[b]);
    const double mu_aff = comp_aff / static_cast<double>(std::max<std::size_t>(total_dim_, 1));
    double sigma = mu > 0.0 ? std::pow(std::max(0.0, mu_aff) / mu, 3.0) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector with the second-order term.
    for (std::size_t b = 0; b < nb; ++b) {
      const auto n = X[b].rows();
      Rc[b] = sigma * mu * MatrixXd::Identity(n, n) - X[b] * S[b] - aff.dX[b] * aff.dS[b];
    }
    Direction dir = direction(Rc);
    steps(dir, ap, ad);
    ap = std::min(1.0, opts_.step_fraction * ap);
    ad = std::min(1.0, opts_.step_fraction * ad);

    // Rounding can defeat the eigenvalue step bound on badly conditioned
    // iterates; shorten the step until the new iterate factors.
    auto advance = [&](std::vector<MatrixXd>& V, const std::vector<MatrixXd>& dV, double& a) {
      for (int tries = 0; tries < 40; ++tries, a *= 0.5) {
        std::vector<MatrixXd> next(nb);
        bool pd = true;
        for (std::size_t b = 0; b < nb && pd; ++b) {
          next[b] = sym(V[b] + a * dV[b]);
          pd = next[b].rows() == 0 || next[b].llt().info() == Eigen::Success;
        }
        if (pd) {
          V = std::move(next);
          return;
        }
      }
      a = 0.0;
    };
    advance(X, dir.dX, ap);
    advance(S, dir.dS, ad);
    if (f_) u += ap * dir.du;
    y += ad * dir.dy;
    sol.log.push_back({pobj, dobj, mu, sol.primal_residual, sol.dual_residual, ap, ad});

    stalled = (ap < 1e-8 && ad < 1e-8) ? stalled + 1 : 0;
    if (stalled >= 5) {
      sol.status = SolveStatus::kNumericalFailure;
      sol.message = "step lengths collapsed at iteration " + std::to_string(iter);
      break;
    }
  }

  if (sol.status != SolveStatus::kOptimal && best_merit < std::numeric_limits<double>::infinity()) {
    X = std::move(best.X);
    u = std::move(best.u);
    y = std::move(best.y);
    sol.objective = best.objective;
    sol.dual_objective = best.dual_objective;
    sol.gap = best.gap;
    sol.primal_residual = best.pres;
    sol.dual_residual = best.dres;
    if (best.pres <= opts_.near_tol && best.dres <= opts_.near_tol && best.gap <= opts_.near_gap_tol) {
      sol.message += "; returned iterate " + std::to_string(best.iteration);
      sol.status = SolveStatus::kNearOptimal;
    }
  }
  sol.primal_blocks = std::move(X);
  sol.free_values.assign(u.data(), u.data() + u.size());
  sol.dual_vector.assign(y.data(), y.data() + y.size());
  return sol;
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kNearOptimal: return "near_optimal";
    case SolveStatus::kMaxIterations: return "max_iterations";
    case SolveStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

ConicSolution solve_sdp(const SdpProblem& prob, const SolverOptions& opts) {
  Solver solver(prob, opts);
  return solver.run();
}

void write_sparse_dump(const SdpProblem& prob, std::ostream& out) {
  char buf[128];
  out << "# rows " << prob.num_rows << " free " << prob.num_free << " blocks";
  for (auto n : prob.block_sizes) out << ' ' << n;
  out << '\n';
  for (const auto& e : prob.free_entries) {
    std::snprintf(buf, sizeof buf, "%zu 0 %zu %zu %.17g\n", e.row + 1, e.var + 1, e.var + 1, e.value);
    out << buf;
  }
  for (const auto& e : prob.entries) {
    std::snprintf(buf, sizeof buf, "%zu %zu %zu %zu %.17g\n", e.row + 1, e.block + 1,
                  std::min(e.i, e.j) + 1, std::max(e.i, e.j) + 1, e.value);
    out << buf;
  }
  for (std::size_t r = 0; r < prob.rhs.size(); ++r) {
    if (prob.rhs[r] == 0.0) continue;
    std::snprintf(buf, sizeof buf, "rhs %zu %.17g\n", r + 1, prob.rhs[r]);
    out << buf;
  }
  for (std::size_t v = 0; v < prob.free_cost.size(); ++v) {
    std::snprintf(buf, sizeof buf, "cost 0 %zu %zu %.17g\n", v + 1, v + 1, prob.free_cost[v]);
    out << buf;
  }
  for (const auto& e : prob.block_cost) {
    std::snprintf(buf, sizeof buf, "cost %zu %zu %zu %.17g\n", e.block + 1, std::min(e.i, e.j) + 1,
                  std::max(e.i, e.j) + 1, e.value);
    out << buf;
  }
}

}  // namespace polycontain
