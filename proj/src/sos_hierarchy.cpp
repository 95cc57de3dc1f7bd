#include "polycontain/sos_hierarchy.hpp"

#include <cmath>
#include <cstdio>

#include "polycontain/certifier.hpp"
#include "polycontain/error.hpp"
#include "polycontain/exact_lp.hpp"
#include "polycontain/vertex_oracle.hpp"

namespace polycontain {

std::vector<RationalPolynomial> containment_generators(const NormalizedPair& pair) {
  const std::size_t d = pair.dim();
  const std::size_t nv = 2 * d;
  std::vector<RationalPolynomial> gens;
  const HPolytope& p = pair.p;
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    RationalVector c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = -p.A()(i, j);
    gens.push_back(affine_polynomial<Rational>(nv, p.a()[i], c, 0));
  }
  const VPolytope& q = pair.q;
  for (std::size_t j = 0; j < q.num_points(); ++j) {
    RationalVector c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = -q.B()(i, j);
    gens.push_back(affine_polynomial<Rational>(nv, Rational(1), c, d));
  }
  return gens;
}

QuadraticModuleSpec build_qm_spec(const NormalizedPair& pair, int t, const SosOptions& opts) {
  if (t < 2)
    throw Error(ErrorCode::kArgument,
                "order t = " + std::to_string(t) +
                    " is below the initial step t = 2: at t = 1 every multiplier is constant and "
                    "mu - x^T z cannot be represented");
  if (pair.p.dim() != pair.q.dim()) throw Error(ErrorCode::kDimension, "P and Q dimensions differ");
  if (!origin_in_interior(pair.q))
    throw Error(ErrorCode::kPrecondition,
                "Q is degenerate or misses the origin in its interior; the polar is unbounded and "
                "the SOS hierarchy does not apply");
  const std::size_t nv = 2 * pair.dim();
  MonomialBasis b0(nv, t);
  if (b0.size() > opts.max_sigma0_basis) {
    const double n = static_cast<double>(b0.size());
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "sigma_0 basis has %zu monomials (limit %zu); a dense solve would need roughly "
                  "%.1e flops per iteration",
                  b0.size(), opts.max_sigma0_basis, n * n * n * n);
    throw Error(ErrorCode::kGuard, buf);
  }
  QuadraticModuleSpec spec;
  spec.dim = pair.dim();
  spec.order_t = t;
  spec.num_p_rows = pair.p.num_rows();
  spec.generators = containment_generators(pair);
  spec.sigma0_basis = std::move(b0);
  spec.sigma_basis = MonomialBasis(nv, t - 1);
  return spec;
}

SdpProblem assemble_sdp(const QuadraticModuleSpec& spec) {
  const std::size_t d = spec.dim;
  const std::size_t nv = 2 * d;
  const MonomialBasis rows(nv, 2 * spec.order_t);
  auto row_of = [&](const Monomial& m) {
    const std::size_t r = rows.index_of(m);
    if (r == rows.size()) throw Error(ErrorCode::kInternal, "monomial above the truncation degree");
    return r;
  };

  SdpProblem prob;
  prob.num_rows = rows.size();
  prob.num_free = 1;
  prob.free_cost = {1.0};
  prob.block_sizes.push_back(spec.sigma0_basis.size());
  for (std::size_t g = 0; g < spec.generators.size(); ++g) prob.block_sizes.push_back(spec.sigma_basis.size());

  // s0 + sum s_i g_i - mu = -x^T z, coefficient by coefficient.
  const auto& b0 = spec.sigma0_basis;
  for (std::size_t i = 0; i < b0.size(); ++i)
    for (std::size_t j = i; j < b0.size(); ++j) prob.entries.push_back({row_of(b0[i] * b0[j]), 0, i, j, 1.0});

  const auto& bs = spec.sigma_basis;
  for (std::size_t g = 0; g < spec.generators.size(); ++g) {
    for (std::size_t i = 0; i < bs.size(); ++i) {
      for (std::size_t j = i; j < bs.size(); ++j) {
        const Monomial base = bs[i] * bs[j];
        for (const auto& [m, c] : spec.generators[g].terms())
          prob.entries.push_back({row_of(base * m), g + 1, i, j, to_double(c)});
      }
    }
  }
  prob.free_entries.push_back({row_of(Monomial::one(nv)), 0, -1.0});

  prob.rhs.assign(rows.size(), 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<int> e(nv, 0);
    e[i] = 1;
    e[d + i] = 1;
    prob.rhs[row_of(Monomial(e))] = -1.0;
  }
  return prob;
}

namespace {

// The degree-2t part of mu - x^T z - sum s_i g_i is zero, so any PSD Gram
// matrix of s_0 vanishes on the rows and columns of its degree-t monomials.
// Dropping them, and the equality rows left without entries, gives an
// equivalent program whose primal side has interior points.
struct ReducedSdp {
  SdpProblem problem;
  std::size_t sigma0_kept = 0;  // leading (lower degree) monomials of the s_0 basis
};

ReducedSdp drop_top_degree_sigma0(const SdpProblem& full, const QuadraticModuleSpec& spec) {
  ReducedSdp out;
  const auto& b0 = spec.sigma0_basis;
  while (out.sigma0_kept < b0.size() && b0[out.sigma0_kept].degree() < spec.order_t) ++out.sigma0_kept;

  std::vector<char> used(full.num_rows, 0);
  std::vector<BlockEntry> kept;
  for (const auto& e : full.entries) {
    if (e.block == 0 && std::max(e.i, e.j) >= out.sigma0_kept) continue;
    used[e.row] = 1;
    kept.push_back(e);
  }
  for (const auto& e : full.free_entries) used[e.row] = 1;
  std::vector<std::size_t> remap(full.num_rows, 0);
  std::size_t rows = 0;
  for (std::size_t r = 0; r < full.num_rows; ++r) {
    if (!used[r] && full.rhs[r] != 0.0)
      throw Error(ErrorCode::kInternal, "reduced SOS program lost a nonzero right-hand side");
    if (used[r]) remap[r] = rows++;
  }
  SdpProblem& p = out.problem;
  p.block_sizes = full.block_sizes;
  p.block_sizes[0] = out.sigma0_kept;
  p.num_free = full.num_free;
  p.num_rows = rows;
  p.free_cost = full.free_cost;
  p.rhs.assign(rows, 0.0);
  for (std::size_t r = 0; r < full.num_rows; ++r)
    if (used[r]) p.rhs[remap[r]] = full.rhs[r];
  for (auto e : kept) {
    e.row = remap[e.row];
    p.entries.push_back(e);
  }
  for (auto e : full.free_entries) {
    e.row = remap[e.row];
    p.free_entries.push_back(e);
  }
  return out;
}

// Largest |coordinate| of a bounded H-polytope along each axis; 1 when an
// LP does not return an optimum.
std::vector<double> axis_extent(const HPolytope& p) {
  std::vector<double> w(p.dim(), 1.0);
  for (std::size_t i = 0; i < p.dim(); ++i) {
    double m = 0.0;
    for (LpSense sense : {LpSense::kMaximize, LpSense::kMinimize}) {
      RationalVector c(p.dim(), 0);
      c[i] = 1;
      const LpResult r = solve_lp({c, p, sense});
      if (r.status != LpStatus::kOptimal) return std::vector<double>(p.dim(), 1.0);
      m = std::max(m, std::abs(to_double(r.value)));
    }
    if (m > 0.0) w[i] = m;
  }
  return w;
}

// x = D x', z = D^-1 z' leaves x^T z and the truncated module unchanged. D
// holds powers of two that balance the extents of P and polar(Q) per axis, and
// each generator is divided by its largest coefficient. The solve runs on the
// conditioned generators; Gram blocks are mapped back exactly afterwards.
struct Conditioning {
  std::vector<int> log2_scale;    // D_ii = 2^log2_scale[i]
  std::vector<Rational> divisor;  // per generator
  std::vector<RationalPolynomial> generators;
};

Conditioning condition(const NormalizedPair& pair) {
  const std::size_t d = pair.dim();
  Conditioning c;
  const std::vector<double> wx = axis_extent(pair.p);
  const std::vector<double> wz = axis_extent(polar(pair.q));
  RationalMatrix A = pair.p.A();
  RationalMatrix B = pair.q.B();
  for (std::size_t i = 0; i < d; ++i) {
    const int e = static_cast<int>(std::lround(0.5 * std::log2(wx[i] / wz[i])));
    c.log2_scale.push_back(e);
    Rational s(1);
    if (e >= 0) s = Rational(1) * (mpz_class(1) << e);
    else s = Rational(1) / (mpz_class(1) << -e);
    for (std::size_t r = 0; r < A.rows(); ++r) A(r, i) *= s;
    for (std::size_t j = 0; j < B.cols(); ++j) B(i, j) /= s;
  }
  const NormalizedPair scaled{HPolytope(A, pair.p.a()), VPolytope(B), pair.shift};
  for (RationalPolynomial g : containment_generators(scaled)) {
    Rational m(0);
    for (const auto& [mono, coef] : g.terms()) m = std::max(m, Rational(abs(coef)));
    if (m == 0) m = 1;
    c.divisor.push_back(m);
    c.generators.push_back(g * (Rational(1) / m));
  }
  return c;
}

// Factor s with m(x', z') = s * m(x, z) under the conditioning map.
double monomial_factor(const Monomial& m, const std::vector<int>& log2_scale) {
  const std::size_t d = log2_scale.size();
  int e = 0;
  for (std::size_t i = 0; i < d; ++i) e += log2_scale[i] * (m.exponents()[d + i] - m.exponents()[i]);
  return std::ldexp(1.0, e);
}

}  // namespace

SosCertificate solve_order(const NormalizedPair& pair, int t, const SosOptions& opts) {
  QuadraticModuleSpec spec = build_qm_spec(pair, t, opts);
  const Conditioning cond = condition(pair);
  QuadraticModuleSpec conditioned = spec;
  conditioned.generators = cond.generators;
  const SdpProblem full = assemble_sdp(conditioned);
  const ReducedSdp reduced = drop_top_degree_sigma0(full, spec);
  ConicSolution sol = solve_sdp(reduced.problem, opts.solver);
  if (sol.status != SolveStatus::kOptimal && sol.status != SolveStatus::kNearOptimal) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "SDP at order t = %d did not converge (%s after %d iterations: %s; "
                  "primal residual %.2e, dual residual %.2e, gap %.2e)",
                  t, to_string(sol.status), sol.iterations, sol.message.c_str(), sol.primal_residual,
                  sol.dual_residual, sol.gap);
    throw Error(ErrorCode::kSolver, buf);
  }
  SosCertificate cert;
  cert.order_t = t;
  cert.mu = sol.free_values.at(0);
  cert.generators = spec.generators;
  cert.fingerprint = fingerprint(pair);
  for (std::size_t b = 0; b < sol.primal_blocks.size(); ++b) {
    const auto& X = sol.primal_blocks[b];
    const MonomialBasis& basis = b == 0 ? spec.sigma0_basis : spec.sigma_basis;
    const std::size_t n = basis.size();
    const double inv = b == 0 ? 1.0 : 1.0 / to_double(cond.divisor[b - 1]);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = monomial_factor(basis[i], cond.log2_scale);
    std::vector<double> m(n * n, 0.0);
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
        m[ui * n + uj] = X(i, j) * f[ui] * f[uj] * inv;
      }
    cert.gram_blocks.emplace_back(basis, std::move(m));
  }
  cert.solver_status = to_string(sol.status);
  cert.solver_iterations = sol.iterations;
  cert.solver_gap = sol.gap;
  cert.solver_primal_residual = sol.primal_residual;
  return cert;
}

ContainmentVerdict decide_sos(const NormalizedPair& pair, int t_max, const SosOptions& opts) {
  if (t_max < 2) build_qm_spec(pair, t_max, opts);  // reports the initial-step error
  ContainmentVerdict verdict;
  for (int t = 2; t <= t_max; ++t) {
    SosCertificate cert = solve_order(pair, t, opts);
    verdict.mu_values.push_back(cert.mu);
    if (cert.mu > 1.0 + opts.tol_accept) continue;
    VerificationReport report = verify_certificate(cert, pair);
    if (!report.pass) {
      verdict.notes.push_back("order " + std::to_string(t) + " bound passed but certificate failed verification");
      continue;
    }
    verdict.status = VerdictStatus::kCertifiedContained;
    verdict.order_used = t;
    verdict.residual = report.identity_residual;
    return verdict;
  }
  verdict.status = VerdictStatus::kUndecided;
  return verdict;
}

}  // namespace polycontain
