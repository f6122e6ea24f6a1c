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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mixsemble/error.hpp"

namespace mixsemble {

/// Absolute tolerance for every "sums to one" invariant in the library.
inline constexpr double kProbabilityTolerance = 1e-9;

/// Hard assignment of N items to clusters 0..G-1.
class Partition {
 public:
  /// Throws EmptyInput for zero items and OutOfRangeLabel for labels outside [0, G).
  Partition(std::vector<int> labels, int n_clusters);

  std::size_t size() const noexcept { return labels_.size(); }
  int n_clusters() const noexcept { return n_clusters_; }
  int operator[](std::size_t i) const noexcept { return labels_[i]; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> labels_;
  int n_clusters_;
};

/// N x K matrix of labels; column k holds observer k's partition of the items.
/// Stored row-major so the labels of one item are contiguous.
class LabelMatrix {
 public:
  LabelMatrix(std::vector<int> entries, std::size_t n_items, std::size_t n_observers,
              int n_clusters);

  std::size_t n_items() const noexcept { return n_items_; }
  std::size_t n_observers() const noexcept { return n_observers_; }
  int n_clusters() const noexcept { return n_clusters_; }

  int operator()(std::size_t item, std::size_t observer) const noexcept {
    return entries_[item * n_observers_ + observer];
  }
  std::span<const int> row(std::size_t item) const noexcept {
    return {entries_.data() + item * n_observers_, n_observers_};
  }
  Partition column(std::size_t observer) const;
  const std::vector<int>& entries() const noexcept { return entries_; }

  /// Builds a matrix from K partitions of equal length sharing one G.
  static LabelMatrix from_columns(std::span<const Partition> columns);

  friend bool operator==(const LabelMatrix&, const LabelMatrix&) = default;

 private:
  std::vector<int> entries_;
  std::size_t n_items_;
  std::size_t n_observers_;
  int n_clusters_;
};

/// Validates a ragged-free list of rows (items) against G.
LabelMatrix validate_label_matrix(const std::vector<std::vector<int>>& rows, int n_clusters);

struct Relabeling {
  Partition partition;
  std::map<long long, int> mapping;
};

/// Re-codes arbitrary non-negative labels to 0..G-1 in order of first appearance.
Relabeling relabel_contiguous(std::span<const long long> labels);

/// Posterior class probabilities, N x G row-major.
class Responsibilities {
 public:
  Responsibilities(std::vector<double> values, std::size_t n_items, int n_clusters);

  std::size_t n_items() const noexcept { return n_items_; }
  int n_clusters() const noexcept { return n_clusters_; }
  double operator()(std::size_t i, int g) const noexcept {
    return values_[i * static_cast<std::size_t>(n_clusters_) + static_cast<std::size_t>(g)];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * static_cast<std::size_t>(n_clusters_),
            static_cast<std::size_t>(n_clusters_)};
  }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
  std::size_t n_items_;
  int n_clusters_;
};

/// Per-observer confusion matrices: at(k, g, h) = P(observer k reports h | truth g).
class ErrorRates {
 public:
  ErrorRates(std::vector<double> values, std::size_t n_observers, int n_clusters);

  std::size_t n_observers() const noexcept { return n_observers_; }
  int n_clusters() const noexcept { return n_clusters_; }
  double operator()(std::size_t k, int g, int h) const noexcept {
    const auto G = static_cast<std::size_t>(n_clusters_);
    return values_[(k * G + static_cast<std::size_t>(g)) * G + static_cast<std::size_t>(h)];
  }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
  std::size_t n_observers_;
  int n_clusters_;
};

class Priors {
 public:
  explicit Priors(std::vector<double> values);

  int n_clusters() const noexcept { return static_cast<int>(values_.size()); }
  double operator[](int g) const noexcept { return values_[static_cast<std::size_t>(g)]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// Largest absolute deviation of any row sum from one. Used by tests and by the
/// invariant checks in the constructors above.
double max_row_sum_error(std::span<const double> values, std::size_t row_length);

}  // namespace mixsemble
