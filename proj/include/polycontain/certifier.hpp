#pragma once

#include <optional>
#include <vector>

#include "polycontain/certificate.hpp"
#include "polycontain/vertex_oracle.hpp"
#include "polycontain/verdict.hpp"

namespace polycontain {

inline constexpr double kResidualRelTol = 1e-6;
inline constexpr double kEigenvalueTol = 1e-7;

/// Recomputes s0 + sum s_i g_i from the Gram blocks and the pair's own
/// generators, in floating point, and compares with mu - x^T z.
/// Throws Error(kDimension) on block/generator count mismatch.
VerificationReport verify_certificate(const SosCertificate& cert, const NormalizedPair& pair);

/// SOS evidence for combine_verdict: the last (or accepting) certificate with
/// its report, plus the bound from every order tried.
struct SosEvidence {
  SosCertificate certificate;
  VerificationReport report;
  std::vector<double> mu_values;
};

/// Exact oracle evidence dominates; a verified SOS certificate with
/// mu <= 1 + tol_accept certifies containment on its own. Witnesses are
/// mapped back by `shift`. Throws kArgument when neither source is given.
ContainmentVerdict combine_verdict(const std::optional<SosEvidence>& sos,
                                   const std::optional<BilinearOptimum>& oracle,
                                   const RationalVector& shift, double tol_accept = 1e-7);

}  // namespace polycontain
