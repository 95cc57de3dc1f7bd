#include "polycontain/certifier.hpp"

#include <algorithm>
#include <cmath>

#include "polycontain/error.hpp"
#include "polycontain/sdp.hpp"
#include "polycontain/sos_hierarchy.hpp"

namespace polycontain {
namespace {

RealPolynomial to_real(const RationalPolynomial& p) {
  RealPolynomial out(p.num_vars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, to_double(c));
  return out;
}

}  // namespace

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kCertifiedContained: return "certified-contained";
    case VerdictStatus::kCertifiedNotContained: return "certified-not-contained";
    case VerdictStatus::kUndecided: return "undecided";
  }
  return "unknown";
}

VerificationReport verify_certificate(const SosCertificate& cert, const NormalizedPair& pair) {
  const std::vector<RationalPolynomial> gens = containment_generators(pair);
  if (cert.gram_blocks.size() != gens.size() + 1)
    throw Error(ErrorCode::kDimension, "certificate has " + std::to_string(cert.gram_blocks.size()) +
                                           " Gram blocks but the pair needs " +
                                           std::to_string(gens.size() + 1));
  const std::size_t d = pair.dim();
  const std::size_t nv = 2 * d;
  for (const auto& g : cert.gram_blocks)
    if (g.basis.num_vars() != nv)
      throw Error(ErrorCode::kDimension, "certificate basis is over " + std::to_string(g.basis.num_vars()) +
                                             " variables, expected " + std::to_string(nv));

  // Target mu - x^T z.
  RealPolynomial diff = RealPolynomial::constant(nv, cert.mu);
  for (std::size_t i = 0; i < d; ++i)
    diff.add_term(Monomial::variable(nv, i) * Monomial::variable(nv, d + i), -1.0);

  VerificationReport report;
  diff -= gram_to_poly(cert.gram_blocks[0]);
  for (std::size_t i = 0; i < gens.size(); ++i) diff -= gram_to_poly(cert.gram_blocks[i + 1]) * to_real(gens[i]);

  for (const auto& [m, c] : diff.terms()) report.identity_residual = std::max(report.identity_residual, std::abs(c));
  report.residual_tolerance = kResidualRelTol * (1.0 + std::abs(cert.mu));

  bool psd = true;
  for (const auto& g : cert.gram_blocks) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(g.matrix.data(), n, n);
    const double lmin = min_eigenvalue(0.5 * (m + m.transpose()));
    report.min_eigenvalues.push_back(lmin);
    psd = psd && lmin >= -kEigenvalueTol;
  }
  report.pass = report.identity_residual <= report.residual_tolerance && psd;
  return report;
}

ContainmentVerdict combine_verdict(const std::optional<SosEvidence>& sos,
                                   const std::optional<BilinearOptimum>& oracle,
                                   const RationalVector& shift, double tol_accept) {
  if (!sos && !oracle) throw Error(ErrorCode::kArgument, "combine_verdict needs at least one evidence source");
  ContainmentVerdict v;
  bool sos_ok = false;
  if (sos) {
    v.mu_values = sos->mu_values;
    sos_ok = sos->report.pass && sos->certificate.mu <= 1.0 + tol_accept;
  }
  if (oracle) {
    v.mu_star = oracle->mu_star;
    if (oracle->mu_star > 1) {
      v.status = VerdictStatus::kCertifiedNotContained;
      RationalVector w = oracle->arg_x;
      for (std::size_t i = 0; i < w.size() && i < shift.size(); ++i) w[i] += shift[i];
      v.witness = std::move(w);
      v.strong_containment = false;
      if (sos_ok)
        v.notes.push_back("solver-accuracy incident: verified SOS bound " + std::to_string(sos->certificate.mu) +
                          " contradicts exact mu* = " + to_string(oracle->mu_star));
      return v;
    }
    v.status = VerdictStatus::kCertifiedContained;
    v.strong_containment = oracle->mu_star < 1;
    if (oracle->mu_star == 1) v.notes.push_back("boundary contact: P touches the boundary of Q");
  }
  if (sos_ok) {
    v.status = VerdictStatus::kCertifiedContained;
    v.order_used = sos->certificate.order_t;
    v.residual = sos->report.identity_residual;
  } else if (!oracle) {
    v.status = VerdictStatus::kUndecided;
  }
  return v;
}

}  // namespace polycontain
