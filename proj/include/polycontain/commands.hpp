#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polycontain/certificate.hpp"
#include "polycontain/polytope.hpp"
#include "polycontain/sos_hierarchy.hpp"
#include "polycontain/verdict.hpp"
#include "polycontain/vertex_oracle.hpp"

namespace polycontain {

enum class Method { kSos, kOracle, kBoth };

const char* to_string(Method m);
/// "sos", "oracle" or "both"; throws kArgument otherwise.
Method parse_method(const std::string& name);

struct RunConfig {
  std::string p_path;
  std::string q_path;
  Method method = Method::kBoth;
  int order = 4;              // t_max
  double precision = 1e-4;    // scale search interval width
  std::uint64_t seed = 0;
  std::string output;         // optional file for the JSON result
  bool force_oracle = false;
};

/// Exit codes: 0 contained, 1 not contained, 2 undecided; errors use
/// 2 + ErrorCode (3 parse ... 11 internal).
int exit_code(VerdictStatus s);
int exit_code_for_error(int error_code);

struct CheckOutcome {
  ContainmentVerdict verdict;
  std::optional<SosCertificate> certificate;  // the accepting (or last) order
  std::optional<Rational> ascent_lower_bound; // alternating ascent, SOS runs only
  double oracle_seconds = 0.0;
  double sos_seconds = 0.0;
};

/// Decision on in-memory polytopes. SOS runs in the centroid frame; the
/// witness is reported in input coordinates.
CheckOutcome check_pair(const HPolytope& p, const VPolytope& q, const RunConfig& cfg,
                        const SosOptions& sos = {});

struct ScaleOutcome {
  Rational r_lo;            // certified at order t
  Rational r_hi;            // not certified at order t (initially the exact bound 1/mu*)
  Rational exact_bound;     // 1/mu*
  int order_t = 2;
  int solves = 0;
  std::vector<double> probe_mu;  // mu_t(rP, Q) per probe, NaN where the solver failed
};

/// Bisection for the largest r with rP certified inside Q at order t. Both
/// polytopes must contain the origin in their interior; scaling is about it.
ScaleOutcome scale_search(const HPolytope& p, const VPolytope& q, int t, double precision,
                          const SosOptions& sos = {}, const OracleLimits& limits = {});

/// Whether rP is certified inside Q at order t (bound and verification).
/// A solver failure counts as not certified and leaves *mu NaN.
bool certified_at(const HPolytope& p, const VPolytope& q, int t, const SosOptions& sos, double* mu = nullptr);

/// Text and JSON renderings plus the process exit code.
struct CommandResult {
  int exit_code = 0;
  std::string json;
  std::string text;
};

std::string verdict_to_json(const CheckOutcome& outcome, const RunConfig& cfg);

CommandResult cmd_check(const RunConfig& cfg);
CommandResult cmd_scale(const RunConfig& cfg);
/// Writes the certificate JSON to cfg.output (or returns it in json).
CommandResult cmd_certify(const RunConfig& cfg);
/// Exit 0 when the certificate verifies, 1 when it does not.
CommandResult cmd_verify(const RunConfig& cfg, const std::string& certificate_path);
/// table1, cubecross or nonsym; exit 0 when every cell matches.
CommandResult cmd_reproduce(const std::string& table, const RunConfig& cfg);

}  // namespace polycontain
