/* Exercises the C interface from plain C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "polycontain/polycontain.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static const char* path(const char* name) {
  static char buf[4][512];
  static int slot = 0;
  slot = (slot + 1) % 4;
  snprintf(buf[slot], sizeof buf[slot], "%s/%s", PC_DATA_DIR, name);
  return buf[slot];
}

static void test_polytopes(void) {
  pc_polytope* p = NULL;
  pc_polytope* q = NULL;
  EXPECT(pc_polytope_load(path("cube3.json"), &p) == PC_OK);
  EXPECT(pc_polytope_load(path("cross3e2.json"), &q) == PC_OK);
  EXPECT(pc_polytope_dim(p) == 3);
  EXPECT(pc_polytope_kind(p) == 'H');
  EXPECT(pc_polytope_kind(q) == 'V');

  char* mu = NULL;
  EXPECT(pc_mu_star(p, q, 0, &mu) == PC_OK);
  EXPECT(mu && strcmp(mu, "3/2") == 0);
  pc_string_free(mu);

  mu = NULL;
  EXPECT(pc_mu_star(q, p, 0, &mu) != PC_OK);
  EXPECT(strlen(pc_last_error()) > 0);

  char* js = NULL;
  EXPECT(pc_polytope_to_json(p, &js) == PC_OK);
  EXPECT(js && strstr(js, "\"A\"") != NULL);
  pc_string_free(js);

  pc_polytope_free(p);
  pc_polytope_free(q);

  pc_polytope* missing = NULL;
  EXPECT(pc_polytope_load(path("missing.json"), &missing) == PC_ERR_IO);
  EXPECT(missing == NULL);
}

static void test_check(void) {
  pc_config* cfg = pc_config_new();
  EXPECT(cfg != NULL);
  EXPECT(pc_config_set_polytopes(cfg, path("cube2.json"), path("cross2e2.json")) == PC_OK);
  EXPECT(pc_config_set_order(cfg, 2) == PC_OK);
  EXPECT(pc_config_set_method(cfg, "nonsense") == PC_ERR_ARGUMENT);
  EXPECT(pc_config_set_precision(cfg, -1.0) == PC_ERR_ARGUMENT);

  pc_result* res = NULL;
  EXPECT(pc_check(cfg, &res) == PC_OK);
  EXPECT(pc_result_exit_code(res) == 0);
  EXPECT(strstr(pc_result_json(res), "certified-contained") != NULL);
  pc_result_free(res);

  EXPECT(pc_config_set_polytopes(cfg, path("cube2.json"), path("cross3e3.json")) == PC_OK);
  res = NULL;
  EXPECT(pc_check(cfg, &res) == PC_ERR_DIMENSION);
  EXPECT(res == NULL);
  EXPECT(pc_error_exit_code(PC_ERR_DIMENSION) == 4);
  pc_config_free(cfg);
}

static void test_reproduce_unknown(void) {
  pc_config* cfg = pc_config_new();
  pc_result* res = NULL;
  EXPECT(pc_reproduce(cfg, "table9", &res) == PC_ERR_ARGUMENT);
  EXPECT(strstr(pc_last_error(), "table9") != NULL);
  pc_config_free(cfg);
}

int main(void) {
  EXPECT(strlen(pc_version()) > 0);
  test_polytopes();
  test_check();
  test_reproduce_unknown();
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("C API: all checks passed\n");
  return failures ? 1 : 0;
}
