// Copyright 2026 The mixsemble Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mixsemble/mixsemble.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "mixsemble/alignment.hpp"
#include "mixsemble/datagen.hpp"
#include "mixsemble/harness.hpp"
#include "mixsemble/io.hpp"
#include "mixsemble/metrics.hpp"
#include "mixsemble/vote.hpp"

struct msb_partition {
  mixsemble::Partition value;
};
struct msb_label_matrix {
  mixsemble::LabelMatrix value;
};
struct msb_consensus_model {
  mixsemble::ConsensusModel value;
};
struct msb_dataset {
  mixsemble::Dataset value;
};
struct msb_report {
  mixsemble::ExperimentReport value;
  std::string output_dir;
};

namespace {

thread_local std::string g_last_error;

msb_status to_status(mixsemble::ErrorCode code) {
  using mixsemble::ErrorCode;
  switch (code) {
    case ErrorCode::OutOfRangeLabel: return MSB_ERR_OUT_OF_RANGE_LABEL;
    case ErrorCode::EmptyInput: return MSB_ERR_EMPTY_INPUT;
    case ErrorCode::NegativeLabel: return MSB_ERR_NEGATIVE_LABEL;
    case ErrorCode::LengthMismatch: return MSB_ERR_LENGTH_MISMATCH;
    case ErrorCode::TooFewItems: return MSB_ERR_TOO_FEW_ITEMS;
    case ErrorCode::ClusterCountMismatch: return MSB_ERR_CLUSTER_COUNT_MISMATCH;
    case ErrorCode::BadColumnIndex: return MSB_ERR_BAD_COLUMN_INDEX;
    case ErrorCode::DegenerateRow: return MSB_ERR_DEGENERATE_ROW;
    case ErrorCode::NonFinite: return MSB_ERR_NON_FINITE;
    case ErrorCode::EmptyCluster: return MSB_ERR_EMPTY_CLUSTER;
    case ErrorCode::TooFewPoints: return MSB_ERR_TOO_FEW_POINTS;
    case ErrorCode::SingularComponent: return MSB_ERR_SINGULAR_COMPONENT;
    case ErrorCode::BadSpec: return MSB_ERR_BAD_SPEC;
    case ErrorCode::RejectionOverflow: return MSB_ERR_REJECTION_OVERFLOW;
    case ErrorCode::ParseError: return MSB_ERR_PARSE;
    case ErrorCode::NonNumericCell: return MSB_ERR_NON_NUMERIC_CELL;
    case ErrorCode::MissingColumn: return MSB_ERR_MISSING_COLUMN;
    case ErrorCode::RaggedRows: return MSB_ERR_RAGGED_ROWS;
    case ErrorCode::IoError: return MSB_ERR_IO;
    case ErrorCode::EmptyReport: return MSB_ERR_EMPTY_REPORT;
    case ErrorCode::InvalidConfig: return MSB_ERR_INVALID_CONFIG;
    case ErrorCode::InvalidProbability: return MSB_ERR_INVALID_PROBABILITY;
  }
  return MSB_ERR_INTERNAL;
}

msb_status fail(msb_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes. body returns void.
template <typename F>
msb_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return MSB_OK;
  } catch (const mixsemble::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MSB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MSB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MSB_ERR_INTERNAL, "unknown error");
  }
}

#define MSB_REQUIRE(cond)                                                      \
  do {                                                                         \
    if (!(cond)) return fail(MSB_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

mixsemble::EmConfig to_em(const msb_em_config* config) {
  mixsemble::EmConfig em;
  if (config) {
    em.max_iterations = config->max_iterations;
    em.rel_tolerance = config->rel_tolerance;
    em.smoothing = config->smoothing;
  }
  return em;
}

size_t copy_out(const std::vector<double>& values, double* out, size_t capacity) {
  if (!out) return values.size();
  const size_t n = std::min(capacity, values.size());
  std::copy_n(values.begin(), n, out);
  return n;
}

}  // namespace

extern "C" {

const char* msb_last_error(void) { return g_last_error.c_str(); }

const char* msb_status_name(msb_status status) {
  switch (status) {
    case MSB_OK: return "OK";
    case MSB_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case MSB_ERR_INTERNAL: return "Internal";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(mixsemble::ErrorCode::InvalidProbability); ++c) {
    const auto code = static_cast<mixsemble::ErrorCode>(c);
    if (to_status(code) == status) return mixsemble::to_string(code).data();
  }
  return "Unknown";
}

int msb_status_is_validation(msb_status status) {
  if (status == MSB_OK || status == MSB_ERR_INTERNAL) return 0;
  if (status == MSB_ERR_INVALID_ARGUMENT) return 1;
  for (int c = 0; c <= static_cast<int>(mixsemble::ErrorCode::InvalidProbability); ++c) {
    const auto code = static_cast<mixsemble::ErrorCode>(c);
    if (to_status(code) == status) return mixsemble::is_validation_error(code) ? 1 : 0;
  }
  return 0;
}

msb_status msb_partition_create(const int32_t* labels, size_t n_items, int32_t n_clusters,
                                msb_partition** out) {
  MSB_REQUIRE(out);
  MSB_REQUIRE(labels || n_items == 0);
  *out = nullptr;
  return guarded([&] {
    std::vector<int> v(labels, labels + n_items);
    *out = new msb_partition{mixsemble::Partition(std::move(v), n_clusters)};
  });
}

msb_status msb_partition_load_csv(const char* path, size_t column, msb_partition** out) {
  MSB_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    const auto matrix = mixsemble::load_partitions_csv(path);
    const auto col = matrix.column(column);
    // Re-code so G reflects this column alone.
    std::vector<long long> raw(col.labels().begin(), col.labels().end());
    *out = new msb_partition{mixsemble::relabel_contiguous(raw).partition};
  });
}

msb_status msb_partition_write_csv(const msb_partition* partition, const char* column_name,
                                   const char* path) {
  MSB_REQUIRE(partition && path);
  return guarded([&] {
    const mixsemble::Partition cols[] = {partition->value};
    mixsemble::write_partitions_csv(mixsemble::LabelMatrix::from_columns(cols),
                                    {column_name ? column_name : "label"}, path);
  });
}

size_t msb_partition_size(const msb_partition* partition) {
  return partition ? partition->value.size() : 0;
}

int32_t msb_partition_n_clusters(const msb_partition* partition) {
  return partition ? partition->value.n_clusters() : 0;
}

size_t msb_partition_labels(const msb_partition* partition, int32_t* out, size_t capacity) {
  if (!partition || !out) return 0;
  const size_t n = std::min(capacity, partition->value.size());
  for (size_t i = 0; i < n; ++i) out[i] = partition->value[i];
  return n;
}

void msb_partition_destroy(msb_partition* partition) { delete partition; }

msb_status msb_label_matrix_create(const int32_t* entries, size_t n_items, size_t n_observers,
                                   int32_t n_clusters, msb_label_matrix** out) {
  MSB_REQUIRE(out);
  MSB_REQUIRE(entries || n_items * n_observers == 0);
  *out = nullptr;
  return guarded([&] {
    std::vector<int> v(entries, entries + n_items * n_observers);
    *out = new msb_label_matrix{mixsemble::LabelMatrix(std::move(v), n_items, n_observers, n_clusters)};
  });
}

msb_status msb_label_matrix_load_csv(const char* path, int32_t n_clusters, msb_label_matrix** out) {
  MSB_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    const std::optional<int> g = n_clusters > 0 ? std::optional<int>(n_clusters) : std::nullopt;
    *out = new msb_label_matrix{mixsemble::load_partitions_csv(path, g)};
  });
}

size_t msb_label_matrix_n_items(const msb_label_matrix* m) { return m ? m->value.n_items() : 0; }
size_t msb_label_matrix_n_observers(const msb_label_matrix* m) {
  return m ? m->value.n_observers() : 0;
}
int32_t msb_label_matrix_n_clusters(const msb_label_matrix* m) {
  return m ? m->value.n_clusters() : 0;
}

int32_t msb_label_matrix_at(const msb_label_matrix* m, size_t item, size_t observer) {
  if (!m || item >= m->value.n_items() || observer >= m->value.n_observers()) return -1;
  return m->value(item, observer);
}

msb_status msb_label_matrix_align(const msb_label_matrix* matrix, size_t reference_column,
                                  msb_label_matrix** out) {
  MSB_REQUIRE(matrix && out);
  *out = nullptr;
  return guarded([&] {
    *out = new msb_label_matrix{mixsemble::align_ensemble(matrix->value, reference_column)};
  });
}

void msb_label_matrix_destroy(msb_label_matrix* matrix) { delete matrix; }

msb_status msb_adjusted_rand_index(const msb_partition* a, const msb_partition* b, double* out) {
  MSB_REQUIRE(a && b && out);
  return guarded([&] { *out = mixsemble::adjusted_rand_index(a->value, b->value); });
}

msb_status msb_majority_vote(const msb_label_matrix* aligned, msb_partition** out) {
  MSB_REQUIRE(aligned && out);
  *out = nullptr;
  return guarded([&] { *out = new msb_partition{mixsemble::majority_vote(aligned->value)}; });
}

msb_em_config msb_em_config_default(void) {
  const mixsemble::EmConfig em;
  return {em.max_iterations, em.rel_tolerance, em.smoothing};
}

msb_status msb_consensus_fit(const msb_label_matrix* matrix, const msb_em_config* config,
                             msb_consensus_model** out) {
  MSB_REQUIRE(matrix && out);
  *out = nullptr;
  return guarded([&] {
    *out = new msb_consensus_model{mixsemble::fit(matrix->value, to_em(config))};
  });
}

msb_status msb_fuse(const msb_label_matrix* matrix, msb_fusion_method method,
                    const msb_em_config* config, msb_partition** out) {
  MSB_REQUIRE(matrix && out);
  MSB_REQUIRE(method == MSB_FUSION_DAWID_SKENE || method == MSB_FUSION_VOTE);
  *out = nullptr;
  return guarded([&] {
    const auto m = method == MSB_FUSION_VOTE ? mixsemble::FusionMethod::Vote
                                             : mixsemble::FusionMethod::DawidSkene;
    *out = new msb_partition{mixsemble::fuse(matrix->value, m, to_em(config))};
  });
}

int32_t msb_consensus_n_iterations(const msb_consensus_model* model) {
  return model ? model->value.n_iterations : 0;
}

int msb_consensus_converged(const msb_consensus_model* model) {
  return model && model->value.converged ? 1 : 0;
}

double msb_consensus_log_likelihood(const msb_consensus_model* model) {
  return model ? model->value.loglik_trace.back() : 0.0;
}

size_t msb_consensus_loglik_trace(const msb_consensus_model* model, double* out, size_t capacity) {
  return model ? copy_out(model->value.loglik_trace, out, capacity) : 0;
}

size_t msb_consensus_priors(const msb_consensus_model* model, double* out, size_t capacity) {
  return model ? copy_out(model->value.priors.values(), out, capacity) : 0;
}

size_t msb_consensus_error_rates(const msb_consensus_model* model, double* out, size_t capacity) {
  return model ? copy_out(model->value.error_rates.values(), out, capacity) : 0;
}

size_t msb_consensus_responsibilities(const msb_consensus_model* model, double* out,
                                      size_t capacity) {
  return model ? copy_out(model->value.responsibilities.values(), out, capacity) : 0;
}

msb_status msb_consensus_hard_labels(const msb_consensus_model* model, msb_partition** out) {
  MSB_REQUIRE(model && out);
  *out = nullptr;
  return guarded([&] { *out = new msb_partition{mixsemble::hard_labels(model->value)}; });
}

void msb_consensus_destroy(msb_consensus_model* model) { delete model; }

msb_status msb_simulate_preset(const char* preset, uint64_t seed, msb_dataset** out) {
  MSB_REQUIRE(preset && out);
  *out = nullptr;
  return guarded([&] { *out = new msb_dataset{mixsemble::simulate_preset(preset, seed)}; });
}

msb_status msb_dataset_load_csv(const char* path, const char* label_column, msb_dataset** out) {
  MSB_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    const auto label = label_column ? std::optional<std::string>(label_column) : std::nullopt;
    *out = new msb_dataset{mixsemble::load_dataset_csv(path, label)};
  });
}

msb_status msb_dataset_write_csv(const msb_dataset* dataset, const char* path) {
  MSB_REQUIRE(dataset && path);
  return guarded([&] { mixsemble::write_dataset_csv(dataset->value, path); });
}

size_t msb_dataset_n_items(const msb_dataset* dataset) { return dataset ? dataset->value.n_items() : 0; }
size_t msb_dataset_n_features(const msb_dataset* dataset) {
  return dataset ? dataset->value.n_features() : 0;
}

msb_status msb_dataset_truth(const msb_dataset* dataset, msb_partition** out) {
  MSB_REQUIRE(dataset && out);
  *out = nullptr;
  return guarded([&] {
    if (dataset->value.truth) *out = new msb_partition{*dataset->value.truth};
  });
}

void msb_dataset_destroy(msb_dataset* dataset) { delete dataset; }

msb_status msb_run_experiment_file(const char* config_path, int32_t jobs, msb_report** out) {
  MSB_REQUIRE(config_path && out);
  *out = nullptr;
  return guarded([&] {
    auto config = mixsemble::load_experiment_config(config_path);
    if (jobs > 0) config.jobs = jobs;
    auto report = std::make_unique<msb_report>();
    report->value = mixsemble::run_experiment(config);
    if (config.output_dir) report->output_dir = config.output_dir->string();
    *out = report.release();
  });
}

msb_status msb_report_write_csv(const msb_report* report, const char* path) {
  MSB_REQUIRE(report && path);
  return guarded([&] { mixsemble::write_results_csv(report->value, path); });
}

const char* msb_report_output_dir(const msb_report* report) {
  return report && !report->output_dir.empty() ? report->output_dir.c_str() : nullptr;
}

size_t msb_report_n_records(const msb_report* report) {
  return report ? report->value.records.size() : 0;
}

msb_status msb_report_summarize(const msb_report* report, char** out) {
  MSB_REQUIRE(report && out);
  *out = nullptr;
  return guarded([&] {
    const std::string text = mixsemble::summarize(report->value);
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buffer) throw std::bad_alloc();
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out = buffer;
  });
}

void msb_report_destroy(msb_report* report) { delete report; }

void msb_string_free(char* text) { std::free(text); }

}  // extern "C"
