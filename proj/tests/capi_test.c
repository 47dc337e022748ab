/* Exercises the C interface from C. */
#include <stdio.h>
#include <string.h>

#include "combdual/combdual.h"

static int failures = 0;

#define EXPECT(cond)                                                     \
  do {                                                                   \
    if (!(cond)) {                                                       \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                        \
    }                                                                    \
  } while (0)

static int contains(const char* haystack, const char* needle) {
  return haystack && strstr(haystack, needle) != NULL;
}

int main(void) {
  char* text = NULL;
  int code = -1;
  int n = 0;
  cd_graph* g = NULL;
  cd_truncation* h = NULL;

  EXPECT(strlen(cd_version()) > 0);

  EXPECT(cd_family_names(&text) == CD_OK);
  EXPECT(contains(text, "\"grid\""));
  EXPECT(contains(text, "\"taleph0_3levels\""));
  cd_string_free(text);

  /* Truncation handles. */
  EXPECT(cd_family_create("grid", NULL, &g) == CD_OK);
  EXPECT(cd_truncate(g, 2, 0, &h) == CD_OK);
  EXPECT(cd_truncation_size(h, &n) == CD_OK);
  EXPECT(n == 6);
  EXPECT(cd_truncation_to_json(h, &text) == CD_OK);
  EXPECT(contains(text, "\"boundary\""));
  cd_string_free(text);
  EXPECT(cd_truncation_to_dot(h, &text) == CD_OK);
  EXPECT(contains(text, "--"));
  cd_string_free(text);
  cd_truncation_free(h);
  EXPECT(cd_truncate(g, -1, 0, &h) == CD_ERR_INVALID_ARGUMENT);
  cd_graph_free(g);

  /* Parameters and errors. */
  EXPECT(cd_family_create("regular_tree", "{\"d\": \"3\"}", &g) == CD_OK);
  EXPECT(cd_truncate(g, 2, 0, &h) == CD_OK);
  EXPECT(cd_truncation_size(h, &n) == CD_OK);
  EXPECT(n == 13);
  cd_truncation_free(h);
  EXPECT(cd_truncate(g, 40, 0, &h) == CD_ERR_BUDGET);
  EXPECT(strlen(cd_last_error()) > 0);
  cd_graph_free(g);

  g = NULL;
  EXPECT(cd_family_create("no_such_family", NULL, &g) == CD_ERR_INVALID_ARGUMENT);
  EXPECT(contains(cd_last_error(), "no_such_family"));
  EXPECT(g == NULL);
  EXPECT(cd_family_create("grid", "{not json", &g) == CD_ERR_INVALID_ARGUMENT);
  EXPECT(cd_family_create(NULL, NULL, &g) == CD_ERR_NULL_POINTER);
  EXPECT(cd_truncation_size(NULL, &n) == CD_ERR_NULL_POINTER);
  cd_graph_free(NULL);
  cd_truncation_free(NULL);
  cd_string_free(NULL);

  /* Runs. */
  EXPECT(cd_analyze("{\"family\": \"grid\", \"radius\": 8}", &text, &code) == CD_OK);
  EXPECT(code == 0);
  EXPECT(contains(text, "\"normal-tree\""));
  cd_string_free(text);

  EXPECT(cd_decompose("{\"family\": \"dominated_comb_gadget\", \"u\": \"teeth\", \"radius\": 30, \"cap\": 20}",
                      "2", &text, &code) == CD_OK);
  EXPECT(code == 1);
  EXPECT(contains(text, "\"refused\": true"));
  cd_string_free(text);

  EXPECT(cd_decompose("{\"family\": \"ray\", \"radius\": 10}", "3.8", &text, &code) == CD_OK);
  EXPECT(code == 0);
  {
    char* table = NULL;
    int vcode = -1;
    EXPECT(cd_verify(text, &table, &vcode) == CD_OK);
    EXPECT(vcode == 0);
    EXPECT(contains(table, "\"td_axiom_b_edges\""));
    cd_string_free(table);
  }
  cd_string_free(text);

  EXPECT(cd_decompose("{\"family\": \"ray\"}", "9", &text, &code) == CD_ERR_INVALID_ARGUMENT);
  EXPECT(cd_analyze("{\"family\": \"grid\", \"k\": 1}", &text, &code) == CD_ERR_INVALID_ARGUMENT);
  EXPECT(cd_verify("[]", &text, &code) == CD_ERR_INVALID_ARGUMENT);

  EXPECT(cd_analyze("{\"family\": \"dominated_comb_gadget\", \"u\": \"teeth\", \"radius\": 30, \"cap\": 20}",
                    &text, &code) == CD_OK);
  {
    char* table = NULL;
    int rcode = -1;
    EXPECT(cd_certify_recheck(text, 50, &table, &rcode) == CD_OK);
    EXPECT(rcode == 0);
    EXPECT(contains(table, "\"radius\": 50"));
    cd_string_free(table);
  }
  cd_string_free(text);

  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("C API: all checks passed\n");
  return failures ? 1 : 0;
}
