#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polycontain {

/// One nonzero of a symmetric constraint matrix: A[i][j] = A[j][i] = value (i <= j).
struct BlockEntry {
  std::size_t row;
  std::size_t block;
  std::size_t i;
  std::size_t j;
  double value;
};

struct FreeEntry {
  std::size_t row;
  std::size_t var;
  double value;
};

/// min  sum_b <C_b, X_b> + c^T u
/// s.t. sum_b <A_rb, X_b> + (F u)_r = rhs_r   for every row r
///      X_b PSD, u free.
struct SdpProblem {
  std::vector<std::size_t> block_sizes;
  std::size_t num_free = 0;
  std::size_t num_rows = 0;
  std::vector<BlockEntry> entries;
  std::vector<FreeEntry> free_entries;
  std::vector<double> rhs;
  std::vector<double> free_cost;         // length num_free
  std::vector<BlockEntry> block_cost;    // C_b as entries; `row` is ignored
};

struct SolverOptions {
  int max_iter = 200;
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  double eig_tol = 1e-7;
  double step_fraction = 0.98;
  double regularization = 1e-14;
  double near_tol = 1e-6;      // stalled runs with both residuals below this
  double near_gap_tol = 1e-5;  // and the relative gap below this are near_optimal
  int stall_window = 15;   // iterations without halving the merit before stopping
  bool verbose = false;
};

enum class SolveStatus { kOptimal, kNearOptimal, kMaxIterations, kNumericalFailure };

const char* to_string(SolveStatus s);

struct IterationLog {
  double primal_objective;
  double dual_objective;
  double complementarity;
  double primal_residual;
  double dual_residual;
  double primal_step;
  double dual_step;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::kNumericalFailure;
  double objective = 0.0;       // primal
  double dual_objective = 0.0;
  std::vector<Eigen::MatrixXd> primal_blocks;
  std::vector<double> free_values;
  std::vector<double> dual_vector;
  double gap = 0.0;              // |primal - dual| / (1 + |primal|)
  double primal_residual = 0.0;  // max-abs, relative to 1 + max|rhs|
  double dual_residual = 0.0;
  int iterations = 0;
  std::string message;
  std::vector<IterationLog> log;
};

/// Primal-dual path following: HKM direction, Mehrotra predictor-corrector,
/// dense Schur complement. Single threaded and deterministic.
ConicSolution solve_sdp(const SdpProblem& prob, const SolverOptions& opts = {});

/// Plain-text sparse dump: one "row block i j value" line per constraint
/// entry (1-based, block 0 = free scalars), then "rhs row value" and
/// "cost block i j value" lines.
void write_sparse_dump(const SdpProblem& prob, std::ostream& out);

/// Smallest eigenvalue of a symmetric matrix (0 for an empty one).
double min_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace polycontain
