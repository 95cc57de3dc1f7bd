#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polycontain/error.hpp"
#include "polycontain/polytope.hpp"

namespace polycontain {
namespace {

using nlohmann::json;

Rational parse_number(const json& v) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Rational(mpz_class(std::to_string(v.get<std::uint64_t>())))
                                  : Rational(mpz_class(std::to_string(v.get<std::int64_t>())));
  }
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_float())
    throw Error(ErrorCode::kParse, "floating-point literal " + v.dump() +
                                       " is not exact; write it as a string, e.g. \"" + v.dump() + "\"");
  throw Error(ErrorCode::kParse, "expected a number, got " + v.dump());
}

RationalVector parse_vector(const json& v, const char* what) {
  if (!v.is_array()) throw Error(ErrorCode::kParse, std::string(what) + " must be an array");
  RationalVector out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(parse_number(e));
  return out;
}

RationalMatrix parse_matrix(const json& v, const char* what) {
  if (!v.is_array() || v.empty())
    throw Error(ErrorCode::kParse, std::string(what) + " must be a non-empty array of rows");
  std::vector<RationalVector> rows;
  for (const auto& r : v) rows.push_back(parse_vector(r, what));
  for (const auto& r : rows)
    if (r.size() != rows.front().size())
      throw Error(ErrorCode::kParse, std::string(what) + " has rows of different lengths");
  return RationalMatrix::from_rows(rows);
}

json number_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return to_string(r);
}

json matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(number_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

AnyPolytope parse_polytope(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
    throw Error(ErrorCode::kParse, "polytope JSON needs a string field \"type\" (\"H\" or \"V\")");
  const std::string type = doc["type"].get<std::string>();
  if (type == "H") {
    if (!doc.contains("A") || !doc.contains("a"))
      throw Error(ErrorCode::kParse, "H-polytope needs fields \"A\" and \"a\"");
    RationalMatrix A = parse_matrix(doc["A"], "A");
    RationalVector a = parse_vector(doc["a"], "a");
    if (a.size() != A.rows())
      throw Error(ErrorCode::kDimension, "H-polytope: \"a\" has " + std::to_string(a.size()) +
                                             " entries but \"A\" has " + std::to_string(A.rows()) +
                                             " rows");
    return HPolytope(std::move(A), std::move(a));
  }
  if (type == "V") {
    if (!doc.contains("B")) throw Error(ErrorCode::kParse, "V-polytope needs field \"B\"");
    return VPolytope(parse_matrix(doc["B"], "B"));
  }
  throw Error(ErrorCode::kParse, "unknown polytope type \"" + type + "\"");
}

AnyPolytope load_polytope(const std::string& path) {
  try {
    return parse_polytope(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

HPolytope load_h_polytope(const std::string& path) {
  auto any = load_polytope(path);
  if (auto* h = std::get_if<HPolytope>(&any)) return std::move(*h);
  throw Error(ErrorCode::kParse, path + ": expected an H-polytope (\"type\":\"H\")");
}

VPolytope load_v_polytope(const std::string& path) {
  auto any = load_polytope(path);
  if (auto* v = std::get_if<VPolytope>(&any)) return std::move(*v);
  throw Error(ErrorCode::kParse, path + ": expected a V-polytope (\"type\":\"V\")");
}

std::string to_json(const HPolytope& p) {
  json a = json::array();
  for (const auto& v : p.a()) a.push_back(number_json(v));
  return json{{"type", "H"}, {"A", matrix_json(p.A())}, {"a", std::move(a)}}.dump();
}

std::string to_json(const VPolytope& q) {
  return json{{"type", "V"}, {"B", matrix_json(q.B())}}.dump();
}

}  // namespace polycontain
