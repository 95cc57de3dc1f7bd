#pragma once

#include <cstddef>

#include "polycontain/certificate.hpp"
#include "polycontain/polynomial.hpp"
#include "polycontain/polytope.hpp"
#include "polycontain/sdp.hpp"
#include "polycontain/verdict.hpp"

namespace polycontain {

/// Generators of QM_t(A, B) over the 2d variables (x, z) and the Gram bases.
struct QuadraticModuleSpec {
  std::size_t dim = 0;
  int order_t = 0;
  std::size_t num_p_rows = 0;                  // k; the remaining l generators are polar rows
  std::vector<RationalPolynomial> generators;  // a - A x rows, then 1 - B^T z rows
  MonomialBasis sigma0_basis;                  // degree t
  MonomialBasis sigma_basis;                   // degree t - 1
};

struct SosOptions {
  SolverOptions solver;
  double tol_accept = 1e-7;        // slack on the mu <= 1 test
  std::size_t max_sigma0_basis = 300;
};

/// Generator polynomials in 2d variables: a_i - A_i x, then 1 - b_j^T z.
std::vector<RationalPolynomial> containment_generators(const NormalizedPair& pair);

/// Throws kArgument for t < 2, kPrecondition when 0 is not interior to Q and
/// kGuard when the sigma_0 basis exceeds the size limit.
QuadraticModuleSpec build_qm_spec(const NormalizedPair& pair, int t, const SosOptions& opts = {});

/// Rows of the SDP are the monomials of degree <= 2t in graded-lex order;
/// block 0 is sigma_0, block i the multiplier of generator i; free scalar 0 is mu.
SdpProblem assemble_sdp(const QuadraticModuleSpec& spec);

/// Solves order t. Throws Error(kSolver) with iteration diagnostics when
/// the interior-point method does not converge.
SosCertificate solve_order(const NormalizedPair& pair, int t, const SosOptions& opts = {});

/// Orders t = 2..t_max; certified at the first verified mu <= 1 + tol_accept.
ContainmentVerdict decide_sos(const NormalizedPair& pair, int t_max, const SosOptions& opts = {});

}  // namespace polycontain
