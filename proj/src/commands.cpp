#include "polycontain/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polycontain/certifier.hpp"
#include "polycontain/error.hpp"
#include "polycontain/exact_lp.hpp"
#include "polycontain/instances.hpp"

namespace polycontain {
namespace {

using Json = nlohmann::ordered_json;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

constexpr int kAscentStarts = 8;
constexpr double kReproduceTol = 2e-3;
constexpr double kMuTol = 1e-5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

Json rational_vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

void require_same_dim(const HPolytope& p, const VPolytope& q) {
  if (p.dim() != q.dim())
    throw Error(ErrorCode::kDimension, "P lives in dimension " + std::to_string(p.dim()) + " but Q in dimension " +
                                           std::to_string(q.dim()));
}

void require_bounded_nonempty(const HPolytope& p) {
  if (!is_nonempty(p)) throw Error(ErrorCode::kPrecondition, "P is empty");
  if (!is_bounded(p)) throw Error(ErrorCode::kPrecondition, "P is unbounded");
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void emit(const RunConfig& cfg, CommandResult& res) {
  if (!cfg.output.empty()) write_file(cfg.output, res.json + "\n");
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::kSos: return "sos";
    case Method::kOracle: return "oracle";
    case Method::kBoth: return "both";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "sos") return Method::kSos;
  if (name == "oracle") return Method::kOracle;
  if (name == "both") return Method::kBoth;
  throw Error(ErrorCode::kArgument, "unknown method '" + name + "' (expected sos, oracle or both)");
}

int exit_code(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kCertifiedContained: return 0;
    case VerdictStatus::kCertifiedNotContained: return 1;
    case VerdictStatus::kUndecided: return 2;
  }
  return 2;
}

int exit_code_for_error(int error_code) { return 2 + error_code; }

CheckOutcome check_pair(const HPolytope& p, const VPolytope& q, const RunConfig& cfg, const SosOptions& sos) {
  require_same_dim(p, q);
  if (cfg.order < 2 && cfg.method != Method::kOracle)
    build_qm_spec(identity_pair(p, q), cfg.order, sos);  // initial-step error
  CheckOutcome out;
  if (!is_nonempty(p)) {
    out.verdict.status = VerdictStatus::kCertifiedContained;
    out.verdict.vacuous = true;
    out.verdict.notes.push_back("P is empty; containment holds vacuously");
    return out;
  }
  if (!is_bounded(p)) throw Error(ErrorCode::kPrecondition, "P is unbounded");

  OracleLimits limits;
  limits.force = cfg.force_oracle;
  const NormalizedPair pair = centroid_normalize(p, q);
  const bool full = origin_in_interior(pair.q);

  std::optional<BilinearOptimum> oracle;
  std::optional<ContainmentVerdict> fallback;
  if (cfg.method != Method::kSos) {
    Stopwatch sw;
    if (full)
      oracle = mu_star(pair.p, pair.q, limits);
    else
      fallback = decide_containment_oracle(p, q, limits);
    out.oracle_seconds = sw.seconds();
  }

  std::optional<SosEvidence> evidence;
  std::optional<BilinearOptimum> ascent;
  std::vector<std::string> sos_notes;
  if (cfg.method != Method::kOracle) {
    Stopwatch sw;
    if (!full) {
      if (cfg.method == Method::kSos) build_qm_spec(pair, cfg.order, sos);  // throws kPrecondition
      sos_notes.push_back("SOS hierarchy skipped: Q is not full-dimensional");
    } else {
      if (cfg.method == Method::kSos) {
        ascent = alternating_ascent(pair.p, pair.q, kAscentStarts, cfg.seed);
        out.ascent_lower_bound = ascent->mu_star;
      }
      const bool refuted = (oracle && oracle->mu_star > 1) || (ascent && ascent->mu_star > 1);
      const int t_last = refuted ? 2 : cfg.order;
      SosEvidence ev;
      for (int t = 2; t <= t_last; ++t) {
        ev.certificate = solve_order(pair, t, sos);
        ev.mu_values.push_back(ev.certificate.mu);
        ev.report = verify_certificate(ev.certificate, pair);
        ev.certificate.verification = ev.report;
        if (ev.certificate.mu <= 1.0 + sos.tol_accept) {
          if (ev.report.pass) break;
          sos_notes.push_back("order " + std::to_string(t) + " bound passed but certificate failed verification");
        }
      }
      out.certificate = ev.certificate;
      evidence = std::move(ev);
    }
    out.sos_seconds = sw.seconds();
  }

  ContainmentVerdict& v = out.verdict;
  if (fallback) {
    v = *fallback;
  } else {
    v = combine_verdict(evidence, oracle, pair.shift, sos.tol_accept);
    if (ascent && ascent->mu_star > 1) {
      v.status = VerdictStatus::kCertifiedNotContained;
      v.witness = pair.to_input_frame(ascent->arg_x);
      v.strong_containment = false;
      v.order_used.reset();
      v.residual.reset();
      v.notes.push_back("alternating ascent found x^T z = " + to_string(ascent->mu_star) + " > 1");
    }
  }
  if (evidence && v.status == VerdictStatus::kCertifiedContained && !v.order_used && !v.vacuous &&
      cfg.method == Method::kBoth)
    v.notes.push_back("SOS hierarchy did not certify up to order " + std::to_string(evidence->mu_values.size() + 1));
  if (evidence && v.status == VerdictStatus::kUndecided)
    v.notes.push_back("undecided at order " + std::to_string(evidence->mu_values.size() + 1));
  for (auto& n : sos_notes) v.notes.push_back(std::move(n));
  return out;
}

std::string verdict_to_json(const CheckOutcome& outcome, const RunConfig& cfg) {
  const ContainmentVerdict& v = outcome.verdict;
  Json j;
  j["status"] = to_string(v.status);
  j["method"] = to_string(cfg.method);
  j["order_used"] = v.order_used ? Json(*v.order_used) : Json(nullptr);
  j["mu_values"] = v.mu_values;
  j["mu_star"] = v.mu_star ? Json(to_string(*v.mu_star)) : Json(nullptr);
  j["mu_star_float"] = v.mu_star ? Json(to_double(*v.mu_star)) : Json(nullptr);
  j["ascent_lower_bound"] = outcome.ascent_lower_bound ? Json(to_string(*outcome.ascent_lower_bound)) : Json(nullptr);
  j["witness"] = v.witness ? rational_vector_json(*v.witness) : Json(nullptr);
  j["residual"] = v.residual ? Json(*v.residual) : Json(nullptr);
  j["strong_containment"] = v.strong_containment ? Json(*v.strong_containment) : Json(nullptr);
  j["vacuous"] = v.vacuous;
  j["notes"] = v.notes;
  j["timings"] = {{"oracle_s", outcome.oracle_seconds}, {"sos_s", outcome.sos_seconds}};
  return j.dump(2);
}

bool certified_at(const HPolytope& p, const VPolytope& q, int t, const SosOptions& sos, double* mu) {
  const NormalizedPair pair = identity_pair(p, q);
  SosCertificate cert;
  try {
    cert = solve_order(pair, t, sos);
  } catch (const Error& e) {
    // a probe the solver cannot finish is not certified
    if (e.code() != ErrorCode::kSolver) throw;
    if (mu) *mu = std::nan("");
    return false;
  }
  if (mu) *mu = cert.mu;
  if (cert.mu > 1.0 + sos.tol_accept) return false;
  return verify_certificate(cert, pair).pass;
}

ScaleOutcome scale_search(const HPolytope& p, const VPolytope& q, int t, double precision, const SosOptions& sos,
                          const OracleLimits& limits) {
  require_same_dim(p, q);
  if (!(precision > 0.0)) throw Error(ErrorCode::kArgument, "precision must be positive");
  require_bounded_nonempty(p);
  for (const auto& ai : p.a())
    if (ai <= 0) throw Error(ErrorCode::kPrecondition, "scaling needs the origin in the interior of P");
  if (!origin_in_interior(q)) throw Error(ErrorCode::kPrecondition, "scaling needs the origin in the interior of Q");
  build_qm_spec(identity_pair(p, q), t, sos);  // order and size checks before any solve

  const BilinearOptimum bo = mu_star(p, q, limits);
  ScaleOutcome out;
  out.order_t = t;
  out.exact_bound = 1 / bo.mu_star;
  out.r_lo = 0;
  out.r_hi = out.exact_bound;
  while (to_double(out.r_hi - out.r_lo) > precision) {
    Rational mid = (out.r_lo + out.r_hi) / 2;
    double mu = 0.0;
    const bool ok = certified_at(scale(p, mid), q, t, sos, &mu);
    ++out.solves;
    out.probe_mu.push_back(mu);
    (ok ? out.r_lo : out.r_hi) = mid;
  }
  return out;
}

CommandResult cmd_check(const RunConfig& cfg) {
  Stopwatch sw;
  const HPolytope p = load_h_polytope(cfg.p_path);
  const VPolytope q = load_v_polytope(cfg.q_path);
  const CheckOutcome outcome = check_pair(p, q, cfg);
  Json j = Json::parse(verdict_to_json(outcome, cfg));
  j["timings"]["total_s"] = sw.seconds();
  CommandResult res;
  res.exit_code = exit_code(outcome.verdict.status);
  res.json = j.dump(2);
  res.text = res.json;
  emit(cfg, res);
  return res;
}

CommandResult cmd_scale(const RunConfig& cfg) {
  Stopwatch sw;
  const HPolytope p = load_h_polytope(cfg.p_path);
  const VPolytope q = load_v_polytope(cfg.q_path);
  OracleLimits limits;
  limits.force = cfg.force_oracle;
  const ScaleOutcome s = scale_search(p, q, cfg.order, cfg.precision, {}, limits);
  Json j;
  j["order"] = s.order_t;
  j["r"] = to_double(s.r_lo);
  j["r_lo"] = to_string(s.r_lo);
  j["r_hi"] = to_string(s.r_hi);
  j["exact_bound"] = to_string(s.exact_bound);
  j["exact_bound_float"] = to_double(s.exact_bound);
  j["precision"] = cfg.precision;
  j["solves"] = s.solves;
  j["probe_mu"] = s.probe_mu;
  j["timings"] = {{"total_s", sw.seconds()}};
  CommandResult res;
  res.json = j.dump(2);
  res.text = res.json;
  emit(cfg, res);
  return res;
}

CommandResult cmd_certify(const RunConfig& cfg) {
  const HPolytope p = load_h_polytope(cfg.p_path);
  const VPolytope q = load_v_polytope(cfg.q_path);
  require_same_dim(p, q);
  require_bounded_nonempty(p);
  const NormalizedPair pair = centroid_normalize(p, q);
  const SosOptions sos;
  SosCertificate cert;
  bool accepted = false;
  if (cfg.order < 2) build_qm_spec(pair, cfg.order, sos);
  for (int t = 2; t <= cfg.order && !accepted; ++t) {
    cert = solve_order(pair, t, sos);
    cert.verification = verify_certificate(cert, pair);
    accepted = cert.mu <= 1.0 + sos.tol_accept && cert.verification->pass;
  }
  CommandResult res;
  res.exit_code = accepted ? 0 : 2;
  res.json = certificate_to_json(cert);
  res.text = "order " + std::to_string(cert.order_t) + " mu " + fmt("%.10g", cert.mu) + " residual " +
             fmt("%.3e", cert.verification->identity_residual) + (accepted ? " certified" : " not certified");
  emit(cfg, res);
  return res;
}

CommandResult cmd_verify(const RunConfig& cfg, const std::string& certificate_path) {
  const HPolytope p = load_h_polytope(cfg.p_path);
  const VPolytope q = load_v_polytope(cfg.q_path);
  require_same_dim(p, q);
  const NormalizedPair pair = centroid_normalize(p, q);
  const SosCertificate cert = certificate_from_json(read_file(certificate_path));
  const std::string expected = fingerprint(pair);
  if (cert.fingerprint != expected)
    throw Error(ErrorCode::kFingerprint, "certificate fingerprint " + cert.fingerprint +
                                             " does not match the polytope pair (" + expected + ")");
  const VerificationReport r = verify_certificate(cert, pair);
  Json j;
  j["pass"] = r.pass;
  j["order"] = cert.order_t;
  j["mu"] = cert.mu;
  j["identity_residual"] = r.identity_residual;
  j["residual_tolerance"] = r.residual_tolerance;
  j["min_eigenvalues"] = r.min_eigenvalues;
  j["certifies_containment"] = r.pass && cert.mu <= 1.0 + SosOptions{}.tol_accept;
  CommandResult res;
  res.exit_code = r.pass ? 0 : 1;
  res.json = j.dump(2);
  res.text = res.json;
  emit(cfg, res);
  return res;
}

namespace {

struct Cell {
  std::string label;
  double expected;
  double computed;
  bool pass;
};

Json cells_json(const std::vector<Cell>& cells) {
  Json arr = Json::array();
  for (const auto& c : cells)
    arr.push_back({{"cell", c.label}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
  return arr;
}

std::string cells_text(const std::string& title, const std::vector<Cell>& cells) {
  std::string out = title + "\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-28s %10s %10s %10s  %s\n", "cell", "expected", "computed", "diff", "result");
  out += buf;
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof buf, "%-28s %10.4f %10.4f %10.2e  %s\n", c.label.c_str(), c.expected, c.computed,
                  std::abs(c.computed - c.expected), c.pass ? "PASS" : "FAIL");
    out += buf;
  }
  return out;
}

Cell scale_cell(const std::string& label, const HPolytope& p, const VPolytope& q, int t, double expected,
                double precision) {
  const ScaleOutcome s = scale_search(p, q, t, precision);
  const double r = to_double(s.r_lo);
  return {label, expected, r, std::abs(r - expected) <= kReproduceTol};
}

}  // namespace

CommandResult cmd_reproduce(const std::string& table, const RunConfig& cfg) {
  std::vector<Cell> cells;
  std::string title;
  if (table == "table1") {
    title = "Table 1: maximal certified r for the cube inside the V-cube";
    struct Entry {
      int d, t;
      double r;
    };
    const Entry entries[] = {{2, 2, 0.7071}, {3, 2, 0.5774}, {4, 2, 0.5000}, {5, 2, 0.4472},
                             {2, 3, 0.9937}, {3, 3, 0.8819}, {2, 4, 0.9994}};
    for (const auto& e : entries) {
      if (e.t > cfg.order) continue;
      cells.push_back(scale_cell("d=" + std::to_string(e.d) + " t=" + std::to_string(e.t), h_cube(e.d),
                                 v_cube(e.d), e.t, e.r, cfg.precision));
    }
  } else if (table == "cubecross") {
    title = "Cube in e-scaled cross polytope at t=2: mu(2) = d/e, certified iff e >= d";
    const SosOptions sos;
    for (int d = 2; d <= 4; ++d)
      for (int e = d - 1; e <= d + 1; ++e) {
        const HPolytope p = h_cube(d);
        const VPolytope q = v_cross(d, e);
        double mu = 0.0;
        const bool certified = certified_at(p, q, 2, sos, &mu);
        const Rational exact = mu_star(p, q).mu_star;
        const double expected = static_cast<double>(d) / e;
        const bool pass = certified == (e >= d) && std::abs(mu - expected) <= kMuTol && exact == Rational(d) / e;
        cells.push_back({"d=" + std::to_string(d) + " e=" + std::to_string(e) + (certified ? " certified" : " undecided"),
                         expected, mu, pass});
      }
  } else if (table == "nonsym") {
    title = "Non-symmetric quadrilateral: maximal certified r at t=2";
    cells.push_back(scale_cell("Q1 t=2", nonsym_p(), nonsym_q1(), 2, 0.9271, cfg.precision));
    cells.push_back(scale_cell("Q2 t=2", nonsym_p(), nonsym_q2(), 2, 0.9996, cfg.precision));
    double mu = 0.0;
    const bool certified = certified_at(nonsym_p(), nonsym_q1(), 2, {}, &mu);
    cells.push_back({"Q1 r=1 t=2 (mu, undecided)", 1.0 / 0.9271, mu, !certified && std::abs(1.0 / mu - 0.9271) <= kReproduceTol});
  } else {
    throw Error(ErrorCode::kArgument, "unknown table '" + table + "' (expected table1, cubecross or nonsym)");
  }
  bool all = true;
  for (const auto& c : cells) all = all && c.pass;
  Json j;
  j["table"] = table;
  j["cells"] = cells_json(cells);
  j["all_pass"] = all;
  CommandResult res;
  res.exit_code = all ? 0 : 1;
  res.json = j.dump(2);
  res.text = cells_text(title, cells);
  emit(cfg, res);
  return res;
}

}  // namespace polycontain
