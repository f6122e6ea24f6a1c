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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mixsemble/core_types.hpp"

namespace mixsemble {

/// N x d feature matrix with optional ground truth.
struct Dataset {
  Eigen::MatrixXd features;
  std::optional<Partition> truth;
  std::vector<std::string> column_names;

  std::size_t n_items() const noexcept { return static_cast<std::size_t>(features.rows()); }
  std::size_t n_features() const noexcept { return static_cast<std::size_t>(features.cols()); }

  /// Throws NonFinite for non-finite entries and LengthMismatch when the truth
  /// or the column names do not fit the feature matrix.
  void validate() const;
};

}  // namespace mixsemble
