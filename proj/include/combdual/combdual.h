/* C interface to the combdual library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * function returns a cd_status; on failure cd_last_error() describes the
 * problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** are owned by the caller and released
 * with cd_string_free. Documents are exchanged as UTF-8 JSON.
 */
#ifndef COMBDUAL_H
#define COMBDUAL_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cd_status {
  CD_OK = 0,
  CD_ERR_INVALID_ARGUMENT = 1, /* bad family, parameter, predicate or document */
  CD_ERR_BUDGET = 2,           /* truncation or search budget exhausted */
  CD_ERR_NULL_POINTER = 3,
  CD_ERR_INTERNAL = 4
} cd_status;

typedef struct cd_graph cd_graph;
typedef struct cd_truncation cd_truncation;

const char* cd_version(void);
const char* cd_last_error(void);
void cd_string_free(char* s);

/* Registered family names as a JSON array. */
cd_status cd_family_names(char** out_json);

/* params_json: a JSON object of string values, or NULL. */
cd_status cd_family_create(const char* name, const char* params_json, cd_graph** out);
void cd_graph_free(cd_graph* g);

/* branching_cap <= 0 means no cap. */
cd_status cd_truncate(const cd_graph* g, int radius, int branching_cap, cd_truncation** out);
void cd_truncation_free(cd_truncation* h);
cd_status cd_truncation_size(const cd_truncation* h, int* out_vertices);
cd_status cd_truncation_to_json(const cd_truncation* h, char** out_json);
cd_status cd_truncation_to_dot(const cd_truncation* h, char** out_dot);

/* Runs. config_json holds family, params, u, radius, cap, k, min_gap,
 * budget, max_rays, levels; missing keys take defaults. Each writes a JSON
 * report; *out_exit receives 0 (pass), 1 (predicate failure or refusal)
 * or 2 (inconclusive) and may be NULL. */
cd_status cd_analyze(const char* config_json, char** out_report, int* out_exit);
/* theorem: "3.3", "3.8", "3.5" or "2". */
cd_status cd_decompose(const char* config_json, const char* theorem, char** out_report,
                       int* out_exit);
/* Re-runs the checkers of a stored report. */
cd_status cd_verify(const char* report_json, char** out_table, int* out_exit);
/* radius < 0 keeps the document's radius. */
cd_status cd_certify_recheck(const char* doc_json, int radius, char** out_table, int* out_exit);

#ifdef __cplusplus
}
#endif

#endif /* COMBDUAL_H */
