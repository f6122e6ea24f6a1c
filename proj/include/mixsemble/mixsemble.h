/*
 * Copyright 2026 The mixsemble Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the mixsemble consensus-clustering library.
 *
 * Every object is an opaque handle owned by the caller and released with the
 * matching *_destroy function. Functions return an msb_status; on failure the
 * thread-local message from msb_last_error() describes the problem. Labels are
 * 0-based int32 values.
 */
#ifndef MIXSEMBLE_MIXSEMBLE_H
#define MIXSEMBLE_MIXSEMBLE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MIXSEMBLE_BUILDING)
#    define MSB_API __declspec(dllexport)
#  else
#    define MSB_API __declspec(dllimport)
#  endif
#else
#  define MSB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum msb_status {
  MSB_OK = 0,
  MSB_ERR_OUT_OF_RANGE_LABEL,
  MSB_ERR_EMPTY_INPUT,
  MSB_ERR_NEGATIVE_LABEL,
  MSB_ERR_LENGTH_MISMATCH,
  MSB_ERR_TOO_FEW_ITEMS,
  MSB_ERR_CLUSTER_COUNT_MISMATCH,
  MSB_ERR_BAD_COLUMN_INDEX,
  MSB_ERR_DEGENERATE_ROW,
  MSB_ERR_NON_FINITE,
  MSB_ERR_EMPTY_CLUSTER,
  MSB_ERR_TOO_FEW_POINTS,
  MSB_ERR_SINGULAR_COMPONENT,
  MSB_ERR_BAD_SPEC,
  MSB_ERR_REJECTION_OVERFLOW,
  MSB_ERR_PARSE,
  MSB_ERR_NON_NUMERIC_CELL,
  MSB_ERR_MISSING_COLUMN,
  MSB_ERR_RAGGED_ROWS,
  MSB_ERR_IO,
  MSB_ERR_EMPTY_REPORT,
  MSB_ERR_INVALID_CONFIG,
  MSB_ERR_INVALID_PROBABILITY,
  MSB_ERR_INVALID_ARGUMENT, /* null pointer or similar misuse of this API */
  MSB_ERR_INTERNAL
} msb_status;

typedef struct msb_partition msb_partition;
typedef struct msb_label_matrix msb_label_matrix;
typedef struct msb_consensus_model msb_consensus_model;
typedef struct msb_dataset msb_dataset;
typedef struct msb_report msb_report;

typedef enum msb_fusion_method { MSB_FUSION_DAWID_SKENE = 0, MSB_FUSION_VOTE = 1 } msb_fusion_method;

typedef struct msb_em_config {
  int32_t max_iterations;
  double rel_tolerance;
  double smoothing;
} msb_em_config;

/* ---- errors ---- */
MSB_API const char* msb_last_error(void);
MSB_API const char* msb_status_name(msb_status status);
/* 1 when the status reports bad input (files, labels, configuration), 0 otherwise. */
MSB_API int msb_status_is_validation(msb_status status);

/* ---- partitions ---- */
MSB_API msb_status msb_partition_create(const int32_t* labels, size_t n_items, int32_t n_clusters,
                                        msb_partition** out);
/* Reads one column (by 0-based index) of a partition CSV, relabeled contiguously. */
MSB_API msb_status msb_partition_load_csv(const char* path, size_t column, msb_partition** out);
MSB_API msb_status msb_partition_write_csv(const msb_partition* partition, const char* column_name,
                                           const char* path);
MSB_API size_t msb_partition_size(const msb_partition* partition);
MSB_API int32_t msb_partition_n_clusters(const msb_partition* partition);
/* Copies min(size, capacity) labels into out; returns the number copied. */
MSB_API size_t msb_partition_labels(const msb_partition* partition, int32_t* out, size_t capacity);
MSB_API void msb_partition_destroy(msb_partition* partition);

/* ---- label matrices ---- */
/* entries is row-major n_items x n_observers. */
MSB_API msb_status msb_label_matrix_create(const int32_t* entries, size_t n_items,
                                           size_t n_observers, int32_t n_clusters,
                                           msb_label_matrix** out);
/* n_clusters <= 0 relabels each column contiguously; otherwise labels must lie in [0, n_clusters). */
MSB_API msb_status msb_label_matrix_load_csv(const char* path, int32_t n_clusters,
                                             msb_label_matrix** out);
MSB_API size_t msb_label_matrix_n_items(const msb_label_matrix* matrix);
MSB_API size_t msb_label_matrix_n_observers(const msb_label_matrix* matrix);
MSB_API int32_t msb_label_matrix_n_clusters(const msb_label_matrix* matrix);
MSB_API int32_t msb_label_matrix_at(const msb_label_matrix* matrix, size_t item, size_t observer);
MSB_API msb_status msb_label_matrix_align(const msb_label_matrix* matrix, size_t reference_column,
                                          msb_label_matrix** out);
MSB_API void msb_label_matrix_destroy(msb_label_matrix* matrix);

/* ---- scoring and fusion ---- */
MSB_API msb_status msb_adjusted_rand_index(const msb_partition* a, const msb_partition* b,
                                           double* out);
MSB_API msb_status msb_majority_vote(const msb_label_matrix* aligned, msb_partition** out);
MSB_API msb_em_config msb_em_config_default(void);
/* config may be NULL for the defaults. */
MSB_API msb_status msb_consensus_fit(const msb_label_matrix* matrix, const msb_em_config* config,
                                     msb_consensus_model** out);
/* Aligned vote or Dawid-Skene hard labels in one call; config may be NULL. */
MSB_API msb_status msb_fuse(const msb_label_matrix* matrix, msb_fusion_method method,
                            const msb_em_config* config, msb_partition** out);

MSB_API int32_t msb_consensus_n_iterations(const msb_consensus_model* model);
MSB_API int msb_consensus_converged(const msb_consensus_model* model);
MSB_API double msb_consensus_log_likelihood(const msb_consensus_model* model);
/* Copy routines return the number of doubles written (or required, when out is NULL). */
MSB_API size_t msb_consensus_loglik_trace(const msb_consensus_model* model, double* out,
                                          size_t capacity);
MSB_API size_t msb_consensus_priors(const msb_consensus_model* model, double* out, size_t capacity);
/* K x G x G, index (k * G + g) * G + h. */
MSB_API size_t msb_consensus_error_rates(const msb_consensus_model* model, double* out,
                                         size_t capacity);
/* N x G row-major. */
MSB_API size_t msb_consensus_responsibilities(const msb_consensus_model* model, double* out,
                                              size_t capacity);
MSB_API msb_status msb_consensus_hard_labels(const msb_consensus_model* model, msb_partition** out);
MSB_API void msb_consensus_destroy(msb_consensus_model* model);

/* ---- datasets ---- */
MSB_API msb_status msb_simulate_preset(const char* preset, uint64_t seed, msb_dataset** out);
/* label_column may be NULL. */
MSB_API msb_status msb_dataset_load_csv(const char* path, const char* label_column,
                                        msb_dataset** out);
MSB_API msb_status msb_dataset_write_csv(const msb_dataset* dataset, const char* path);
MSB_API size_t msb_dataset_n_items(const msb_dataset* dataset);
MSB_API size_t msb_dataset_n_features(const msb_dataset* dataset);
/* Sets *out to NULL when the dataset has no ground truth. */
MSB_API msb_status msb_dataset_truth(const msb_dataset* dataset, msb_partition** out);
MSB_API void msb_dataset_destroy(msb_dataset* dataset);

/* ---- experiments ---- */
/* jobs <= 0 keeps the value from the config file. */
MSB_API msb_status msb_run_experiment_file(const char* config_path, int32_t jobs, msb_report** out);
/* Writes the long results CSV to path and the summary next to it (<stem>_summary.csv). */
MSB_API msb_status msb_report_write_csv(const msb_report* report, const char* path);
/* Directory named in the config, or NULL. Owned by the report. */
MSB_API const char* msb_report_output_dir(const msb_report* report);
MSB_API size_t msb_report_n_records(const msb_report* report);
/* *out receives a heap string released with msb_string_free. */
MSB_API msb_status msb_report_summarize(const msb_report* report, char** out);
MSB_API void msb_report_destroy(msb_report* report);
MSB_API void msb_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* MIXSEMBLE_MIXSEMBLE_H */
