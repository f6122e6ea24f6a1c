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

#include "mixsemble/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mixsemble {

namespace {

void check_label(long long label, int n_clusters, const char* where) {
  if (label < 0 || label >= n_clusters) {
    throw Error(ErrorCode::OutOfRangeLabel,
                std::string(where) + ": label " + std::to_string(label) + " not in [0, " +
                    std::to_string(n_clusters) + ")");
  }
}

void check_distributions(const std::vector<double>& values, std::size_t row_length,
                         const char* what) {
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidProbability,
                  std::string(what) + " contains a negative or non-finite entry");
    }
  }
  if (max_row_sum_error(values, row_length) > kProbabilityTolerance) {
    throw Error(ErrorCode::InvalidProbability, std::string(what) + " rows do not sum to 1");
  }
}

}  // namespace

Partition::Partition(std::vector<int> labels, int n_clusters)
    : labels_(std::move(labels)), n_clusters_(n_clusters) {
  if (labels_.empty()) throw Error(ErrorCode::EmptyInput, "partition has no items");
  if (n_clusters_ < 1) throw Error(ErrorCode::OutOfRangeLabel, "partition needs G >= 1");
  for (int label : labels_) check_label(label, n_clusters_, "partition");
}

LabelMatrix::LabelMatrix(std::vector<int> entries, std::size_t n_items, std::size_t n_observers,
                         int n_clusters)
    : entries_(std::move(entries)),
      n_items_(n_items),
      n_observers_(n_observers),
      n_clusters_(n_clusters) {
  if (n_items_ == 0 || n_observers_ == 0) {
    throw Error(ErrorCode::EmptyInput, "label matrix needs at least one row and one column");
  }
  if (entries_.size() != n_items_ * n_observers_) {
    throw Error(ErrorCode::LengthMismatch, "label matrix entry count does not match N x K");
  }
  if (n_clusters_ < 1) throw Error(ErrorCode::OutOfRangeLabel, "label matrix needs G >= 1");
  for (int label : entries_) check_label(label, n_clusters_, "label matrix");
}

Partition LabelMatrix::column(std::size_t observer) const {
  if (observer >= n_observers_) {
    throw Error(ErrorCode::BadColumnIndex, "column " + std::to_string(observer) + " of " +
                                               std::to_string(n_observers_));
  }
  std::vector<int> labels(n_items_);
  for (std::size_t i = 0; i < n_items_; ++i) labels[i] = (*this)(i, observer);
  return Partition(std::move(labels), n_clusters_);
}

LabelMatrix LabelMatrix::from_columns(std::span<const Partition> columns) {
  if (columns.empty()) throw Error(ErrorCode::EmptyInput, "no columns");
  const std::size_t n = columns.front().size();
  const int g = columns.front().n_clusters();
  std::vector<int> entries(n * columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k].size() != n) {
      throw Error(ErrorCode::LengthMismatch, "columns differ in length");
    }
    if (columns[k].n_clusters() != g) {
      throw Error(ErrorCode::ClusterCountMismatch, "columns differ in G");
    }
    for (std::size_t i = 0; i < n; ++i) entries[i * columns.size() + k] = columns[k][i];
  }
  return LabelMatrix(std::move(entries), n, columns.size(), g);
}

LabelMatrix validate_label_matrix(const std::vector<std::vector<int>>& rows, int n_clusters) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::EmptyInput, "label matrix has zero rows or columns");
  }
  const std::size_t k = rows.front().size();
  std::vector<int> entries;
  entries.reserve(rows.size() * k);
  for (const auto& row : rows) {
    if (row.size() != k) throw Error(ErrorCode::RaggedRows, "label matrix rows differ in length");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return LabelMatrix(std::move(entries), rows.size(), k, n_clusters);
}

Relabeling relabel_contiguous(std::span<const long long> labels) {
  if (labels.empty()) throw Error(ErrorCode::EmptyInput, "no labels to relabel");
  std::map<long long, int> mapping;
  std::vector<int> out;
  out.reserve(labels.size());
  for (long long label : labels) {
    if (label < 0) {
      throw Error(ErrorCode::NegativeLabel, "label " + std::to_string(label) + " is negative");
    }
    auto [it, inserted] = mapping.try_emplace(label, static_cast<int>(mapping.size()));
    out.push_back(it->second);
  }
  const int g = static_cast<int>(mapping.size());
  return {Partition(std::move(out), g), std::move(mapping)};
}

Responsibilities::Responsibilities(std::vector<double> values, std::size_t n_items,
                                   int n_clusters)
    : values_(std::move(values)), n_items_(n_items), n_clusters_(n_clusters) {
  if (n_clusters_ < 1 || values_.size() != n_items_ * static_cast<std::size_t>(n_clusters_)) {
    throw Error(ErrorCode::LengthMismatch, "responsibilities shape mismatch");
  }
  check_distributions(values_, static_cast<std::size_t>(n_clusters_), "responsibilities");
}

ErrorRates::ErrorRates(std::vector<double> values, std::size_t n_observers, int n_clusters)
    : values_(std::move(values)), n_observers_(n_observers), n_clusters_(n_clusters) {
  const auto g = static_cast<std::size_t>(n_clusters_);
  if (n_clusters_ < 1 || values_.size() != n_observers_ * g * g) {
    throw Error(ErrorCode::LengthMismatch, "error-rate tensor shape mismatch");
  }
  check_distributions(values_, g, "error rates");
}

Priors::Priors(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::EmptyInput, "priors are empty");
  check_distributions(values_, values_.size(), "priors");
}

double max_row_sum_error(std::span<const double> values, std::size_t row_length) {
  double worst = 0.0;
  for (std::size_t start = 0; start + row_length <= values.size(); start += row_length) {
    double sum = 0.0;
    for (std::size_t j = 0; j < row_length; ++j) sum += values[start + j];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

}  // namespace mixsemble
