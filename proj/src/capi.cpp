#include "polycontain/polycontain.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "polycontain/commands.hpp"
#include "polycontain/error.hpp"
#include "polycontain/vertex_oracle.hpp"

using namespace polycontain;

struct pc_config {
  RunConfig cfg;
};

struct pc_result {
  CommandResult res;
};

struct pc_polytope {
  AnyPolytope poly;
};

namespace {

thread_local std::string g_last_error;

pc_status fail(pc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
pc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const Error& e) {
    return fail(static_cast<pc_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PC_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
pc_status run_command(const pc_config* cfg, pc_result** out, Fn&& fn) {
  if (!cfg || !out) return fail(PC_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* r = new pc_result{fn(cfg->cfg)};
    *out = r;
    return PC_OK;
  });
}

}  // namespace

extern "C" {

const char* pc_version(void) { return "0.1.0"; }

const char* pc_last_error(void) { return g_last_error.c_str(); }

void pc_string_free(char* s) { std::free(s); }

pc_config* pc_config_new(void) { return new (std::nothrow) pc_config{}; }

void pc_config_free(pc_config* cfg) { delete cfg; }

pc_status pc_config_set_polytopes(pc_config* cfg, const char* p_path, const char* q_path) {
  if (!cfg || !p_path || !q_path) return fail(PC_ERR_ARGUMENT, "null argument");
  cfg->cfg.p_path = p_path;
  cfg->cfg.q_path = q_path;
  return PC_OK;
}

pc_status pc_config_set_method(pc_config* cfg, const char* method) {
  if (!cfg || !method) return fail(PC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    cfg->cfg.method = parse_method(method);
    return PC_OK;
  });
}

pc_status pc_config_set_order(pc_config* cfg, int order) {
  if (!cfg) return fail(PC_ERR_ARGUMENT, "null argument");
  cfg->cfg.order = order;
  return PC_OK;
}

pc_status pc_config_set_precision(pc_config* cfg, double precision) {
  if (!cfg) return fail(PC_ERR_ARGUMENT, "null argument");
  if (!(precision > 0.0)) return fail(PC_ERR_ARGUMENT, "precision must be positive");
  cfg->cfg.precision = precision;
  return PC_OK;
}

pc_status pc_config_set_seed(pc_config* cfg, uint64_t seed) {
  if (!cfg) return fail(PC_ERR_ARGUMENT, "null argument");
  cfg->cfg.seed = seed;
  return PC_OK;
}

pc_status pc_config_set_output(pc_config* cfg, const char* path) {
  if (!cfg) return fail(PC_ERR_ARGUMENT, "null argument");
  cfg->cfg.output = path ? path : "";
  return PC_OK;
}

pc_status pc_config_set_force_oracle(pc_config* cfg, int force) {
  if (!cfg) return fail(PC_ERR_ARGUMENT, "null argument");
  cfg->cfg.force_oracle = force != 0;
  return PC_OK;
}

pc_status pc_check(const pc_config* cfg, pc_result** out) { return run_command(cfg, out, cmd_check); }

pc_status pc_scale(const pc_config* cfg, pc_result** out) { return run_command(cfg, out, cmd_scale); }

pc_status pc_certify(const pc_config* cfg, pc_result** out) { return run_command(cfg, out, cmd_certify); }

pc_status pc_verify(const pc_config* cfg, const char* certificate_path, pc_result** out) {
  if (!certificate_path) return fail(PC_ERR_ARGUMENT, "null argument");
  return run_command(cfg, out, [&](const RunConfig& c) { return cmd_verify(c, certificate_path); });
}

pc_status pc_reproduce(const pc_config* cfg, const char* table, pc_result** out) {
  if (!table) return fail(PC_ERR_ARGUMENT, "null argument");
  return run_command(cfg, out, [&](const RunConfig& c) { return cmd_reproduce(table, c); });
}

int pc_result_exit_code(const pc_result* res) { return res ? res->res.exit_code : -1; }

const char* pc_result_json(const pc_result* res) { return res ? res->res.json.c_str() : ""; }

const char* pc_result_text(const pc_result* res) { return res ? res->res.text.c_str() : ""; }

void pc_result_free(pc_result* res) { delete res; }

int pc_error_exit_code(pc_status status) { return exit_code_for_error(static_cast<int>(status)); }

pc_status pc_polytope_load(const char* path, pc_polytope** out) {
  if (!path || !out) return fail(PC_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new pc_polytope{load_polytope(path)};
    return PC_OK;
  });
}

void pc_polytope_free(pc_polytope* p) { delete p; }

size_t pc_polytope_dim(const pc_polytope* p) {
  if (!p) return 0;
  return std::visit([](const auto& x) { return x.dim(); }, p->poly);
}

char pc_polytope_kind(const pc_polytope* p) {
  if (!p) return '\0';
  return std::holds_alternative<HPolytope>(p->poly) ? 'H' : 'V';
}

pc_status pc_polytope_to_json(const pc_polytope* p, char** out) {
  if (!p || !out) return fail(PC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup_string(std::visit([](const auto& x) { return to_json(x); }, p->poly));
    return PC_OK;
  });
}

pc_status pc_mu_star(const pc_polytope* p, const pc_polytope* q, int force, char** out) {
  if (!p || !q || !out) return fail(PC_ERR_ARGUMENT, "null argument");
  const auto* hp = std::get_if<HPolytope>(&p->poly);
  const auto* vq = std::get_if<VPolytope>(&q->poly);
  if (!hp || !vq) return fail(PC_ERR_ARGUMENT, "mu_star needs an H-polytope P and a V-polytope Q");
  return guarded([&] {
    OracleLimits limits;
    limits.force = force != 0;
    *out = dup_string(to_string(mu_star(*hp, *vq, limits).mu_star));
    return PC_OK;
  });
}

}  // extern "C"
