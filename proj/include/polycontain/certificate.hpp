#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polycontain/polynomial.hpp"
#include "polycontain/polytope.hpp"

namespace polycontain {

/// Independent check of a certificate against its polytope pair.
struct VerificationReport {
  double identity_residual = 0.0;     // max |coef| of (mu - x^T z) - (s0 + sum s_i g_i)
  std::vector<double> min_eigenvalues;  // one per Gram block
  double residual_tolerance = 0.0;
  bool pass = false;
};

/// mu - x^T z = s0 + sum_i s_i g_i with s_i = [m]^T G_i [m]; block 0 is s0.
struct SosCertificate {
  int order_t = 0;
  double mu = 0.0;
  std::vector<GramForm<double>> gram_blocks;
  std::vector<RationalPolynomial> generators;  // P rows, then polar rows
  std::string fingerprint;
  std::optional<VerificationReport> verification;

  // Solver diagnostics; empty for hand-written certificates.
  std::string solver_status;
  int solver_iterations = 0;
  double solver_gap = 0.0;
  double solver_primal_residual = 0.0;
};

/// Hex digest of the normalized pair (P, Q and the shift).
std::string fingerprint(const NormalizedPair& pair);

std::string certificate_to_json(const SosCertificate& cert);
/// Generators stay empty: they are rendered text only and the verifier
/// rebuilds them from the polytope pair. Throws Error(kParse).
SosCertificate certificate_from_json(const std::string& text);

}  // namespace polycontain
