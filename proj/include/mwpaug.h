/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 *
 * C interface to the mwpaug shared library. All functions return an
 * mwp_status; pointer results are out-parameters. Strings and arrays
 * returned through out-parameters are heap-allocated and must be released
 * with mwp_string_free / mwp_doubles_free. On any non-OK status,
 * mwp_last_error() describes the failure; the buffer is thread-local and
 * valid until the next call on the same thread.
 */
#ifndef MWPAUG_H_
#define MWPAUG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MWPAUG_API __declspec(dllexport)
#else
#define MWPAUG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mwp_status {
  MWP_OK = 0,
  MWP_ERR_USAGE = 1,      /* bad arguments: NULL pointers, unknown names */
  MWP_ERR_PARSE = 2,      /* unreadable equation text or prefix stream */
  MWP_ERR_IO = 3,         /* file could not be read or written */
  MWP_ERR_VERIFY = 4,     /* verification found failures */
  MWP_ERR_UNSOLVABLE = 5, /* no solution found for the given bindings */
  MWP_ERR_INTERNAL = 6,   /* unexpected library failure */
} mwp_status;

/* Opaque ordered set of simultaneous equations. */
typedef struct mwp_eqset mwp_eqset;

/* Thread-local text for the most recent failure (or informational detail);
 * never NULL. */
MWPAUG_API const char* mwp_last_error(void);

MWPAUG_API void mwp_string_free(char* s);
MWPAUG_API void mwp_doubles_free(double* values);

/* Builds a set from infix equation strings like "x_1 = n_1 + n_2". */
MWPAUG_API mwp_status mwp_eqset_parse(const char* const* equations,
                                      size_t count, mwp_eqset** out);

/* Builds a set from a whitespace-separated prefix token stream starting
 * with the <UET> head token. */
MWPAUG_API mwp_status mwp_eqset_from_prefix(const char* prefix,
                                            mwp_eqset** out);

MWPAUG_API void mwp_eqset_free(mwp_eqset* set);

MWPAUG_API mwp_status mwp_eqset_canonicalize(const mwp_eqset* set,
                                             mwp_eqset** out);

/* Applies one control code ("add", "mul", "sol", "equ", "var" or the <...>
 * token forms). *out is set to NULL when the rewrite leaves the set
 * unchanged. */
MWPAUG_API mwp_status mwp_eqset_transform(const mwp_eqset* set,
                                          const char* code, mwp_eqset** out);

/* Newline-separated infix renderings, one per equation. */
MWPAUG_API mwp_status mwp_eqset_infix(const mwp_eqset* set, char** out);

/* Prefix serialization "<UET> = ...". */
MWPAUG_API mwp_status mwp_eqset_prefix(const mwp_eqset* set, char** out);

/* Numerically compares cand against orig under the code's notion of
 * equivalence. verdict_out receives "equivalent", "not_equivalent" or
 * "inconclusive"; mwp_last_error() holds the detail (reason and witness).
 * samples <= 0 and tolerance <= 0 select the defaults (100, 1e-6). */
MWPAUG_API mwp_status mwp_check_equivalent(const mwp_eqset* orig,
                                           const mwp_eqset* cand,
                                           const char* code, uint64_t seed,
                                           int samples, double tolerance,
                                           char** verdict_out);

/* Solves the set with givens bound positionally (givens[i] binds n_(i+1)).
 * On success *values_out holds x_1..x_m of the first solution and
 * *count_out is m. */
MWPAUG_API mwp_status mwp_solve(const mwp_eqset* set, const double* givens,
                                size_t given_count, double** values_out,
                                size_t* count_out);

typedef struct mwp_augment_options {
  const char* codes;    /* comma-separated code names; NULL/empty = all */
  const char* style;    /* "token" | "description"; NULL = "token" */
  const char* lang;     /* "en" | "zh"; NULL = "en" */
  const char* position; /* "front" | "back"; NULL = "front" */
  int verify;           /* nonzero: oracle-check every rewritten variant */
  int jobs;             /* worker threads; <= 0 means 1 */
  uint64_t seed;        /* oracle seed */
  int samples;          /* oracle samples per check; <= 0 = default 100 */
  double tolerance;     /* residual tolerance; <= 0 = default 1e-6 */
} mwp_augment_options;

/* Fills the documented defaults (all codes, token style, en, front,
 * verify on, 1 job, seed 42, 100 samples, 1e-6). */
MWPAUG_API void mwp_augment_options_init(mwp_augment_options* options);

/* Runs the full augmentation pipeline: loads input_path in the named
 * format ("normalized-jsonl", "math23k-json", "draw1k-json", "hmwp-json"),
 * writes augmented JSONL to output_path and, unless NULL, the oracle
 * report to report_path. stats_json_out receives the run statistics;
 * issues_json_out (optional) receives a JSON array of per-record load
 * failures and warnings. When every record fails to load, nothing is
 * written and MWP_ERR_PARSE is returned. */
MWPAUG_API mwp_status mwp_augment_file(const char* input_path,
                                       const char* format,
                                       const char* output_path,
                                       const char* report_path,
                                       const mwp_augment_options* options,
                                       char** stats_json_out,
                                       char** issues_json_out);

/* Re-checks an augmented JSONL file against its normalized originals.
 * Unless NULL, report_path receives one JSONL line per checked record.
 * summary_json_out is filled whenever the files could be read; the status
 * is MWP_ERR_VERIFY when any line failed verification (not-equivalent,
 * id mismatch, or malformed target). */
MWPAUG_API mwp_status mwp_verify_files(const char* augmented_path,
                                       const char* original_path,
                                       const char* report_path,
                                       uint64_t seed, int samples,
                                       double tolerance,
                                       char** summary_json_out);

/* Renders the stats JSON produced by mwp_augment_file as a plain-text
 * table. */
MWPAUG_API mwp_status mwp_stats_render(const char* stats_json,
                                       char** text_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MWPAUG_H_ */
