#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <fstream>
#include <random>

#include <json.hpp>

#include "polycontain/commands.hpp"
#include "polycontain/error.hpp"
#include "polycontain/instances.hpp"
#include "random_instances.hpp"

using namespace polycontain;
using Json = nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(PC_DATA_DIR) + "/" + name; }

RunConfig config(const std::string& p, const std::string& q, Method m = Method::kBoth, int order = 2) {
  RunConfig cfg;
  cfg.p_path = data(p);
  cfg.q_path = data(q);
  cfg.method = m;
  cfg.order = order;
  return cfg;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

Json without_timings(const std::string& s) {
  Json j = Json::parse(s);
  j.erase("timings");
  return j;
}

}  // namespace

TEST_CASE("method names") {
  CHECK(parse_method("sos") == Method::kSos);
  CHECK(parse_method("oracle") == Method::kOracle);
  CHECK(parse_method("both") == Method::kBoth);
  CHECK(std::string(to_string(Method::kBoth)) == "both");
  CHECK(code_of([] { parse_method("exact"); }) == ErrorCode::kArgument);
  CHECK(exit_code(VerdictStatus::kCertifiedContained) == 0);
  CHECK(exit_code(VerdictStatus::kCertifiedNotContained) == 1);
  CHECK(exit_code(VerdictStatus::kUndecided) == 2);
  CHECK(exit_code_for_error(static_cast<int>(ErrorCode::kParse)) == 3);
}

TEST_CASE("check: cube3 in 3-cross is contained with boundary contact") {
  const CommandResult r = cmd_check(config("cube3.json", "cross3e3.json"));
  CHECK(r.exit_code == 0);
  const Json j = Json::parse(r.json);
  CHECK(j["status"] == "certified-contained");
  CHECK(j["mu_star"] == "1");
  CHECK(j["strong_containment"] == false);
  CHECK(j["order_used"] == 2);
  bool note = false;
  for (const auto& n : j["notes"]) note = note || n.get<std::string>().find("boundary contact") != std::string::npos;
  CHECK(note);
  for (const char* key : {"status", "mu_values", "witness", "residual", "strong_containment", "timings"})
    CHECK(j.contains(key));
}

TEST_CASE("check: cube3 in 2-cross is not contained") {
  const CommandResult r = cmd_check(config("cube3.json", "cross3e2.json"));
  CHECK(r.exit_code == 1);
  const Json j = Json::parse(r.json);
  CHECK(j["status"] == "certified-not-contained");
  CHECK(j["mu_star"] == "3/2");
  REQUIRE(j["witness"].is_array());
  // any vertex of the cube is a witness; the sign pattern depends on the tie-break
  for (const auto& c : j["witness"]) CHECK((c == "1" || c == "-1"));
}

TEST_CASE("check: oracle only and SOS only") {
  CHECK(cmd_check(config("cube3.json", "cross3e2.json", Method::kOracle)).exit_code == 1);
  CHECK(cmd_check(config("cube2.json", "cross2e3.json", Method::kSos)).exit_code == 0);
  // ascent finds a vertex with x^T z > 1
  CHECK(cmd_check(config("cube2.json", "cross2e1.json", Method::kSos)).exit_code == 1);
}

TEST_CASE("check: non-symmetric pair undecided at t=2") {
  const CommandResult r = cmd_check(config("nonsym_p.json", "nonsym_q1.json", Method::kSos, 2));
  CHECK(r.exit_code == 2);
  const Json j = Json::parse(r.json);
  CHECK(j["status"] == "undecided");
  REQUIRE(j["mu_values"].size() == 1);
  CHECK(j["mu_values"][0].get<double>() > 1.0);
}

TEST_CASE("check: errors") {
  CHECK(code_of([] { cmd_check(config("cube2.json", "cross3e3.json")); }) == ErrorCode::kDimension);
  CHECK(code_of([] { cmd_check(config("cube2.json", "missing.json")); }) == ErrorCode::kIo);
  CHECK(code_of([] { cmd_check(config("vcube2.json", "cross2e2.json")); }) == ErrorCode::kParse);
  CHECK(code_of([] { cmd_check(config("cube2.json", "cross2e2.json", Method::kSos, 1)); }) == ErrorCode::kArgument);
}

TEST_CASE("scale: bisection count and sandwich") {
  const HPolytope p = h_cube(2);
  const VPolytope q = v_cube(2);
  const ScaleOutcome s = scale_search(p, q, 2, 1e-1);
  CHECK(s.solves <= 7);
  CHECK(s.r_lo <= s.exact_bound);
  CHECK(s.exact_bound == 1);
  CHECK(to_double(s.r_hi - s.r_lo) <= 1e-1);
  CHECK(std::abs(to_double(s.r_lo) - 0.7071) <= 1e-1);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 4; ++i) {
    const auto inst = pc_test::random_round_instance(rng, 2);
    const ScaleOutcome r = scale_search(inst.p, inst.q, 2, 1e-2);
    CHECK(r.r_lo <= r.exact_bound);
    CHECK(r.r_hi <= r.exact_bound);
    CHECK(r.solves <= 10);
  }
}

TEST_CASE("scale: V-cube d=2 at t=2") {
  RunConfig cfg = config("cube2.json", "vcube2.json", Method::kBoth, 2);
  const Json j = Json::parse(cmd_scale(cfg).json);
  CHECK(std::abs(j["r"].get<double>() - 0.7071) <= 2e-3);
  CHECK(j["exact_bound"] == "1");
}

TEST_CASE("scale: errors") {
  CHECK(code_of([] { scale_search(h_cube(2), v_cube(2), 2, 0.0); }) == ErrorCode::kArgument);
  // P off the origin
  const HPolytope shifted = translate(h_cube(2), {2, 0});
  CHECK(code_of([&] { scale_search(shifted, v_cube(2), 2, 1e-2); }) == ErrorCode::kPrecondition);
}

TEST_CASE("determinism apart from timings") {
  RunConfig cfg = config("nonsym_p.json", "nonsym_q2.json", Method::kSos, 2);
  cfg.seed = 5;
  CHECK(without_timings(cmd_check(cfg).json) == without_timings(cmd_check(cfg).json));
  RunConfig sc = config("cube2.json", "vcube2.json", Method::kBoth, 2);
  sc.precision = 1e-2;
  CHECK(without_timings(cmd_scale(sc).json) == without_timings(cmd_scale(sc).json));
}

TEST_CASE("certify then verify") {
  const std::string path = "test_commands_cert.json";
  RunConfig cfg = config("cube2.json", "cross2e2.json", Method::kBoth, 2);
  cfg.output = path;
  const CommandResult c = cmd_certify(cfg);
  CHECK(c.exit_code == 0);
  cfg.output.clear();
  const CommandResult v = cmd_verify(cfg, path);
  CHECK(v.exit_code == 0);
  const Json j = Json::parse(v.json);
  CHECK(j["pass"] == true);
  CHECK(j["identity_residual"].get<double>() <= 1e-6);
  CHECK(j["certifies_containment"] == true);

  RunConfig wrong = config("cube2.json", "cross2e3.json");
  CHECK(code_of([&] { cmd_verify(wrong, path); }) == ErrorCode::kFingerprint);
  std::remove(path.c_str());

  std::ofstream("test_commands_bad.json") << "{ not json";
  CHECK(code_of([&] { cmd_verify(cfg, "test_commands_bad.json"); }) == ErrorCode::kParse);
  std::remove("test_commands_bad.json");
}

TEST_CASE("verify the shipped certificate") {
  const CommandResult v = cmd_verify(config("cube1.json", "cross1e1.json"), data("cube1_cross1e1_certificate.json"));
  CHECK(v.exit_code == 0);
  const Json j = Json::parse(v.json);
  CHECK(j["identity_residual"].get<double>() <= 1e-12);
}

TEST_CASE("certify an uncertifiable pair") {
  const CommandResult c = cmd_certify(config("cube3.json", "cross3e2.json"));
  CHECK(c.exit_code == 2);
  CHECK(c.text.find("not certified") != std::string::npos);
}

TEST_CASE("reproduce") {
  RunConfig cfg;
  const CommandResult r = cmd_reproduce("cubecross", cfg);
  CHECK(r.exit_code == 0);
  const Json j = Json::parse(r.json);
  CHECK(j["cells"].size() == 9);
  CHECK(j["all_pass"] == true);
  CHECK(r.text.find("FAIL") == std::string::npos);
  CHECK(code_of([&] { cmd_reproduce("table9", cfg); }) == ErrorCode::kArgument);
}
