#include "polycontain/certificate.hpp"

#include <cstdint>
#include <cstdio>

#include <json.hpp>

#include "polycontain/error.hpp"

namespace polycontain {

using nlohmann::json;

std::string fingerprint(const NormalizedPair& pair) {
  std::string canon = to_json(pair.p) + "|" + to_json(pair.q) + "|";
  for (const auto& s : pair.shift) canon += to_string(s) + ",";
  // FNV-1a, 64 bit.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string certificate_to_json(const SosCertificate& cert) {
  json doc;
  doc["t"] = cert.order_t;
  doc["mu"] = cert.mu;
  json gens = json::array();
  for (const auto& g : cert.generators) gens.push_back(g.to_string());
  doc["generators"] = std::move(gens);
  json blocks = json::array();
  for (const auto& g : cert.gram_blocks) {
    json basis = json::array();
    for (const auto& m : g.basis.monomials()) basis.push_back(m.exponents());
    json gram = json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < g.size(); ++j) row.push_back(g(i, j));
      gram.push_back(std::move(row));
    }
    blocks.push_back(json{{"basis", std::move(basis)}, {"gram", std::move(gram)}});
  }
  doc["blocks"] = std::move(blocks);
  doc["fingerprint"] = cert.fingerprint;
  if (!cert.solver_status.empty()) {
    doc["solver"] = json{{"status", cert.solver_status},
                         {"iterations", cert.solver_iterations},
                         {"gap", cert.solver_gap},
                         {"primal_residual", cert.solver_primal_residual}};
  }
  if (cert.verification) {
    const auto& v = *cert.verification;
    doc["verification"] = json{{"identity_residual", v.identity_residual},
                               {"min_eigenvalues", v.min_eigenvalues},
                               {"residual_tolerance", v.residual_tolerance},
                               {"pass", v.pass}};
  }
  return doc.dump(1);
}

namespace {

// Rebuilds a basis from listed exponent vectors, which must form a graded
// monomial basis or an arbitrary explicit list.
GramForm<double> parse_block(const json& blk) {
  if (!blk.is_object() || !blk.contains("basis") || !blk.contains("gram"))
    throw Error(ErrorCode::kParse, "certificate block needs \"basis\" and \"gram\"");
  std::vector<Monomial> monos;
  for (const auto& e : blk["basis"]) monos.emplace_back(e.get<std::vector<int>>());
  if (monos.empty()) throw Error(ErrorCode::kParse, "certificate block with empty basis");
  const std::size_t nv = monos.front().num_vars();
  int max_deg = 0;
  for (const auto& m : monos) {
    if (m.num_vars() != nv) throw Error(ErrorCode::kParse, "certificate basis mixes variable counts");
    max_deg = std::max(max_deg, m.degree());
  }
  // Embed into the full graded basis of that degree so the Gram form keeps
  // a plain index map; unlisted monomials get zero rows and columns.
  MonomialBasis full(nv, max_deg);
  std::vector<std::size_t> pos;
  for (const auto& m : monos) pos.push_back(full.index_of(m));
  const json& gram = blk["gram"];
  if (!gram.is_array() || gram.size() != monos.size())
    throw Error(ErrorCode::kParse, "Gram matrix row count differs from basis size");
  GramForm<double> g(full, std::vector<double>(full.size() * full.size(), 0.0));
  for (std::size_t i = 0; i < monos.size(); ++i) {
    if (!gram[i].is_array() || gram[i].size() != monos.size())
      throw Error(ErrorCode::kParse, "Gram matrix is not square");
    for (std::size_t j = 0; j < monos.size(); ++j) g(pos[i], pos[j]) += gram[i][j].get<double>();
  }
  return g;
}

}  // namespace

SosCertificate certificate_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed certificate JSON: ") + e.what());
  }
  try {
    SosCertificate cert;
    cert.order_t = doc.at("t").get<int>();
    cert.mu = doc.at("mu").get<double>();
    cert.fingerprint = doc.at("fingerprint").get<std::string>();
    for (const auto& blk : doc.at("blocks")) cert.gram_blocks.push_back(parse_block(blk));
    return cert;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace polycontain
