#ifndef POLYCONTAIN_POLYCONTAIN_H
#define POLYCONTAIN_POLYCONTAIN_H

/* C interface to the containment library. All handles are opaque; every
 * function returning pc_status leaves a message for pc_last_error() on
 * failure. Strings returned through char** are freed with pc_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(PC_BUILDING_LIBRARY)
#define PC_API __attribute__((visibility("default")))
#else
#define PC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
  PC_OK = 0,
  PC_ERR_PARSE = 1,
  PC_ERR_DIMENSION = 2,
  PC_ERR_PRECONDITION = 3,
  PC_ERR_GUARD = 4,
  PC_ERR_SOLVER = 5,
  PC_ERR_FINGERPRINT = 6,
  PC_ERR_ARGUMENT = 7,
  PC_ERR_IO = 8,
  PC_ERR_INTERNAL = 9
} pc_status;

typedef struct pc_config pc_config;
typedef struct pc_result pc_result;
typedef struct pc_polytope pc_polytope;

PC_API const char* pc_version(void);

/* Message of the last failing call on this thread ("" if none). */
PC_API const char* pc_last_error(void);

PC_API void pc_string_free(char* s);

/* Run configuration; defaults: method "both", order 4, precision 1e-4, seed 0. */
PC_API pc_config* pc_config_new(void);
PC_API void pc_config_free(pc_config* cfg);
PC_API pc_status pc_config_set_polytopes(pc_config* cfg, const char* p_path, const char* q_path);
PC_API pc_status pc_config_set_method(pc_config* cfg, const char* method);
PC_API pc_status pc_config_set_order(pc_config* cfg, int order);
PC_API pc_status pc_config_set_precision(pc_config* cfg, double precision);
PC_API pc_status pc_config_set_seed(pc_config* cfg, uint64_t seed);
PC_API pc_status pc_config_set_output(pc_config* cfg, const char* path);
PC_API pc_status pc_config_set_force_oracle(pc_config* cfg, int force);

/* Commands. On PC_OK *out holds a result to release with pc_result_free. */
PC_API pc_status pc_check(const pc_config* cfg, pc_result** out);
PC_API pc_status pc_scale(const pc_config* cfg, pc_result** out);
PC_API pc_status pc_certify(const pc_config* cfg, pc_result** out);
PC_API pc_status pc_verify(const pc_config* cfg, const char* certificate_path, pc_result** out);
PC_API pc_status pc_reproduce(const pc_config* cfg, const char* table, pc_result** out);

/* 0 contained / verified, 1 not contained / failed, 2 undecided. */
PC_API int pc_result_exit_code(const pc_result* res);
PC_API const char* pc_result_json(const pc_result* res);
PC_API const char* pc_result_text(const pc_result* res);
PC_API void pc_result_free(pc_result* res);

/* Process exit code for a failing status: 2 + status. */
PC_API int pc_error_exit_code(pc_status status);

/* Polytope files. */
PC_API pc_status pc_polytope_load(const char* path, pc_polytope** out);
PC_API void pc_polytope_free(pc_polytope* p);
PC_API size_t pc_polytope_dim(const pc_polytope* p);
/* 'H' or 'V'. */
PC_API char pc_polytope_kind(const pc_polytope* p);
PC_API pc_status pc_polytope_to_json(const pc_polytope* p, char** out);

/* Exact sup x^T z over P x polar(Q) as a "p/q" string; p must be H, q V. */
PC_API pc_status pc_mu_star(const pc_polytope* p, const pc_polytope* q, int force, char** out);

#ifdef __cplusplus
}
#endif

#endif
