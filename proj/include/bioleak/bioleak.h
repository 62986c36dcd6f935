/* Copyright 2026 The bioleak Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libbioleak.
 *
 * Every function returns a bl_status. On failure a description of the most
 * recent error on the calling thread is available from
 * bl_last_error_message(). Handles are opaque and must be released with
 * the matching *_destroy function; destroy functions accept NULL. Strings
 * returned through char** are owned by the caller and released with
 * bl_string_free().
 */

#ifndef BIOLEAK_BIOLEAK_H_
#define BIOLEAK_BIOLEAK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(BIOLEAK_BUILDING_LIBRARY)
#define BL_API __attribute__((visibility("default")))
#else
#define BL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bl_status {
  BL_OK = 0,
  BL_ERR_INVALID_ARGUMENT = 1,
  BL_ERR_DOMAIN = 2,
  BL_ERR_PRECONDITION = 3,
  BL_ERR_LENGTH_MISMATCH = 4,
  BL_ERR_EMPTY_SAMPLE = 5,
  BL_ERR_SIZE_LIMIT = 6,
  BL_ERR_BUDGET_EXCEEDED = 7,
  BL_ERR_RANK_DEFICIENT = 8,
  BL_ERR_UNKNOWN_USER = 9,
  BL_ERR_DUPLICATE_USER = 10,
  BL_ERR_CONFIG = 11,
  BL_ERR_FORMAT = 12,
  BL_ERR_IO = 13,
  BL_ERR_INTERNAL = 14
} bl_status;

BL_API const char* bl_status_string(bl_status status);
/* Thread-local; empty string when the last call succeeded. */
BL_API const char* bl_last_error_message(void);
BL_API const char* bl_version(void);
BL_API void bl_string_free(char* s);

/* ---- Experiment configuration ------------------------------------------ */

typedef struct bl_config bl_config;

BL_API bl_status bl_config_create(bl_config** out);
BL_API void bl_config_destroy(bl_config* config);
/* Applies a key=value file on top of the current values. */
BL_API bl_status bl_config_load_file(bl_config* config, const char* path);
BL_API bl_status bl_config_set(bl_config* config, const char* key,
                               const char* value);
/* Newly allocated value string; empty for unset optional keys. */
BL_API bl_status bl_config_get(const bl_config* config, const char* key,
                               char** value);
BL_API bl_status bl_config_hash(const bl_config* config, char** hash);
/* Range checks (the seed is not required here). */
BL_API bl_status bl_config_validate(const bl_config* config);

/* Runs fig5, fig6, fig7, hds-validate, com-validate or attack-demo. The
 * CSV is written to out_path when non-NULL and returned through csv when
 * non-NULL. */
BL_API bl_status bl_run_experiment(const bl_config* config, const char* name,
                                   const char* out_path, char** csv);
BL_API bl_status bl_gnuplot_script(const char* name, const char* csv_path,
                                   char** script);

/* ---- Feature vectors ----------------------------------------------------- */

typedef struct bl_vectors bl_vectors;

/* CSV lines "user_id,x1,...,xN". */
BL_API bl_status bl_vectors_load_csv(const char* path, bl_vectors** out);
/* users x dim draws from N(0, sigma_x^2) per the config (users, dim,
 * sigma_x2, seed). */
BL_API bl_status bl_vectors_synthetic(const bl_config* config, bl_vectors** out);
BL_API bl_status bl_vectors_from_array(size_t count, size_t dim,
                                       const char* const* ids,
                                       const double* values, bl_vectors** out);
BL_API bl_status bl_vectors_save_csv(const bl_vectors* vectors, const char* path);
BL_API size_t bl_vectors_count(const bl_vectors* vectors);
BL_API size_t bl_vectors_dim(const bl_vectors* vectors);
/* Copies row i (dim values) into out; the id pointer stays valid until the
 * set is destroyed. */
BL_API bl_status bl_vectors_row(const bl_vectors* vectors, size_t i,
                                const char** id, double* out, size_t out_len);
BL_API void bl_vectors_destroy(bl_vectors* vectors);

/* ---- Enrolment database ------------------------------------------------- */

typedef struct bl_database bl_database;

typedef struct bl_verify_result {
  int accepted;
  double score;
  double threshold;
} bl_verify_result;

/* Empty database with parameters from the config (scheme, projection,
 * sparsity, ambiguation_ratio, hds_j, hds_m, code, seed). `fit` may be NULL
 * unless projection=pca; when given, its dimension overrides `dim`. */
BL_API bl_status bl_database_create(const bl_config* config,
                                    const bl_vectors* fit, bl_database** out);
BL_API bl_status bl_database_load(const char* path, bl_database** out);
BL_API bl_status bl_database_save(const bl_database* db, const char* path);
BL_API void bl_database_destroy(bl_database* db);
BL_API size_t bl_database_size(const bl_database* db);
BL_API size_t bl_database_dim(const bl_database* db);
BL_API bl_status bl_database_enroll(bl_database* db, const char* user_id,
                                    const double* x, size_t n);
BL_API bl_status bl_database_enroll_vectors(bl_database* db,
                                            const bl_vectors* vectors);
/* threshold is used only when has_threshold is nonzero. */
BL_API bl_status bl_database_verify(const bl_database* db, const char* user_id,
                                    const double* y, size_t n,
                                    int has_threshold, double threshold,
                                    bl_verify_result* result);

/* ---- Closed-form leakage ------------------------------------------------ */

BL_API bl_status bl_binary_entropy(double p, double* out);
BL_API bl_status bl_thm1_sign_entropy(size_t intervals, size_t m,
                                      double p_middle, double* out);
BL_API bl_status bl_thm2_extremeness_entropy(size_t m, double f_neg_tau,
                                             double p0, double* out);
BL_API bl_status bl_thm3_extremeness_entropy(double p0, double f_neg_tau,
                                             double* out);
BL_API bl_status bl_noisy_enrollment_leakage_bound(size_t n, size_t k, size_t r,
                                                   double epsilon, double* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* BIOLEAK_BIOLEAK_H_ */
