// Command-line front end; talks to the library only through the C API.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "polycontain/polycontain.h"

namespace {

int report_error(pc_status s) {
  std::fprintf(stderr, "error: %s\n", pc_last_error());
  return pc_error_exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide whether an H-polytope P lies inside a V-polytope Q"};
  app.set_version_flag("--version", pc_version());
  app.require_subcommand(1);

  std::string p_path, q_path, method = "both", out_path, cert_path, table;
  int order = 4;
  double precision = 1e-4;
  std::uint64_t seed = 0;
  bool force_oracle = false;

  auto add_common = [&](CLI::App* sub, bool needs_pair) {
    auto* p = sub->add_option("--p", p_path, "H-polytope JSON file");
    auto* q = sub->add_option("--q", q_path, "V-polytope JSON file");
    if (needs_pair) {
      p->required();
      q->required();
    }
    sub->add_option("--method", method, "sos, oracle or both")->check(CLI::IsMember({"sos", "oracle", "both"}));
    sub->add_option("--order", order, "highest hierarchy order t (scale: the order used)");
    sub->add_option("--precision", precision, "scale search interval width")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "seed for the alternating ascent");
    sub->add_option("--out", out_path, "write the JSON result to this file");
    sub->add_flag("--force-oracle", force_oracle, "ignore the vertex enumeration guard");
  };

  auto* check = app.add_subcommand("check", "decide P in Q; exit 0 contained, 1 not contained, 2 undecided");
  add_common(check, true);
  auto* scale = app.add_subcommand("scale", "largest r with rP certified inside Q at the given order");
  add_common(scale, true);
  auto* certify = app.add_subcommand("certify", "write an SOS certificate (JSON) for P in Q");
  add_common(certify, true);
  auto* verify = app.add_subcommand("verify", "check a certificate against P and Q");
  add_common(verify, true);
  verify->add_option("--cert", cert_path, "certificate JSON file")->required();
  auto* reproduce = app.add_subcommand("reproduce", "recompute the published tables");
  add_common(reproduce, false);
  reproduce->add_option("table", table, "table1, cubecross or nonsym")->required();

  CLI11_PARSE(app, argc, argv);

  pc_config* cfg = pc_config_new();
  if (!cfg) return pc_error_exit_code(PC_ERR_INTERNAL);
  pc_status s = PC_OK;
  if (s == PC_OK && !p_path.empty()) s = pc_config_set_polytopes(cfg, p_path.c_str(), q_path.c_str());
  if (s == PC_OK) s = pc_config_set_method(cfg, method.c_str());
  if (s == PC_OK) s = pc_config_set_order(cfg, order);
  if (s == PC_OK) s = pc_config_set_precision(cfg, precision);
  if (s == PC_OK) s = pc_config_set_seed(cfg, seed);
  if (s == PC_OK) s = pc_config_set_output(cfg, out_path.c_str());
  if (s == PC_OK) s = pc_config_set_force_oracle(cfg, force_oracle ? 1 : 0);

  pc_result* res = nullptr;
  if (s == PC_OK) {
    if (check->parsed())
      s = pc_check(cfg, &res);
    else if (scale->parsed())
      s = pc_scale(cfg, &res);
    else if (certify->parsed())
      s = pc_certify(cfg, &res);
    else if (verify->parsed())
      s = pc_verify(cfg, cert_path.c_str(), &res);
    else
      s = pc_reproduce(cfg, table.c_str(), &res);
  }
  pc_config_free(cfg);
  if (s != PC_OK) return report_error(s);

  int code = pc_result_exit_code(res);
  // certify prints the certificate itself unless it went to a file
  const bool raw = certify->parsed() && out_path.empty();
  std::fprintf(stdout, "%s\n", raw ? pc_result_json(res) : pc_result_text(res));
  pc_result_free(res);
  return code;
}
