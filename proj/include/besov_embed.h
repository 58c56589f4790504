#ifndef BESOV_EMBED_H
#define BESOV_EMBED_H

/* C interface to the embedding decision library.
 *
 * Handles are opaque and owned by the caller. Strings returned through
 * char** out-parameters are heap allocated and released with bsv_string_free.
 * Every call that can fail returns a bsv_status; the message for the most
 * recent failure on the calling thread is available from bsv_last_error. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(BESOV_EMBED_BUILD)
#    define BSV_API __declspec(dllexport)
#  else
#    define BSV_API __declspec(dllimport)
#  endif
#else
#  define BSV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status values double as process exit codes for the command-line tool. */
typedef enum bsv_status {
  BSV_OK = 0,
  BSV_PARSE_ERROR = 64,
  BSV_INVALID_ARGUMENT = 65,
  BSV_NOT_EXPANSIVE = 66,
  BSV_SINGULAR_MATRIX = 67,
  BSV_EIGEN_SOLVER_FAILURE = 68,
  BSV_NOT_AN_EIGENVALUE = 69,
  BSV_OVERFLOW = 70,
  BSV_ILL_CONDITIONED = 71,
  BSV_IO_ERROR = 74,
  BSV_INTERNAL = 75
} bsv_status;

typedef enum bsv_outcome {
  BSV_EMBEDS = 0,
  BSV_DOES_NOT_EMBED = 1,
  BSV_UNDECIDED = 2
} bsv_outcome;

typedef struct bsv_config bsv_config;
typedef struct bsv_matrix bsv_matrix;
typedef struct bsv_report bsv_report;

BSV_API const char* bsv_version(void);
BSV_API const char* bsv_status_name(bsv_status status);
BSV_API const char* bsv_last_error(void);
/* {"error": {"code", "exit_code", "message"}} for the last failure. */
BSV_API const char* bsv_last_error_json(void);
BSV_API void bsv_string_free(char* s);

/* Configuration. Defaults: cluster_tol 1e-8, boundary_tol 1e-9,
 * probe_j_max 400, probe_window 16, output_format json. */
BSV_API bsv_config* bsv_config_create(void);
BSV_API void bsv_config_destroy(bsv_config* config);
/* Merges a JSON object of config keys; unknown keys are a parse error. */
BSV_API bsv_status bsv_config_apply_json(bsv_config* config, const char* json);
BSV_API bsv_status bsv_config_load(bsv_config* config, const char* path);
/* "json", "text" or "csv". */
BSV_API bsv_status bsv_config_set_format(bsv_config* config, const char* format);

/* Matrices in {"dim": d, "rows": [[...]]} form. */
BSV_API bsv_status bsv_matrix_parse(const char* json, bsv_matrix** out);
BSV_API bsv_status bsv_matrix_load(const char* path, bsv_matrix** out);
BSV_API size_t bsv_matrix_dim(const bsv_matrix* m);
BSV_API void bsv_matrix_destroy(bsv_matrix* m);

/* Spectral report in the configured output format. */
BSV_API bsv_status bsv_analyze(const bsv_config* config, const bsv_matrix* m, char** out_text);

/* Runs one case record given as JSON. Relative matrix paths resolve against
 * base_dir, which may be NULL. */
BSV_API bsv_status bsv_decide(const bsv_config* config, const char* case_json, const char* base_dir,
                              bsv_report** out);
BSV_API bsv_outcome bsv_report_outcome(const bsv_report* report);
/* 0 when the two routes contradict each other, 1 otherwise. */
BSV_API int bsv_report_consistent(const bsv_report* report);
/* Rendered in the config's output format; owned by the report. */
BSV_API const char* bsv_report_text(const bsv_report* report);
BSV_API const char* bsv_report_json(const bsv_report* report);
BSV_API void bsv_report_destroy(bsv_report* report);

/* Runs a JSONL file of case records. threads = 0 picks the hardware count.
 * *any_error is set to 1 when at least one case failed. */
BSV_API bsv_status bsv_run_batch(const bsv_config* config, const char* path, unsigned threads, char** out_text,
                                 int* any_error);

/* CSV "j,a_j,partial_sum" for the sequence selected by t ("q", "p" or "2")
 * with summation exponent s (a positive rational or "inf"). Writes to
 * out_path when it is non-NULL, otherwise returns the text in *out_text.
 * A negative j_max falls back to the config's probe_j_max. */
BSV_API bsv_status bsv_probe_trace(const bsv_config* config, const char* case_json, const char* base_dir,
                                   const char* s, const char* t, long j_max, const char* out_path,
                                   char** out_text);

#ifdef __cplusplus
}
#endif

#endif
