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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mixsemble/core_types.hpp"
#include "mixsemble/dataset.hpp"
#include "mixsemble/report.hpp"

namespace mixsemble {

/// Splits one CSV record on ',' with optional double-quoted fields. Trailing
/// '\r' is dropped and unquoted fields are trimmed of spaces.
std::vector<std::string> split_csv_line(const std::string& line);

/// Header row, numeric feature columns, optional label column whose values
/// (strings or integers) are coded 0..G-1 in order of first appearance.
Dataset load_dataset_csv(const std::filesystem::path& path,
                         const std::optional<std::string>& label_column = std::nullopt);

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path,
                       const std::string& label_column = "label");

struct PartitionTable {
  std::vector<std::string> names;
  LabelMatrix matrix;
};

/// N rows x K integer columns with a header naming the members. Without G,
/// every column is relabeled to 0..G_k-1 by first appearance and the matrix G
/// is the largest G_k; with G, raw labels must already lie in [0, G).
PartitionTable load_partition_table(const std::filesystem::path& path,
                                    std::optional<int> n_clusters = std::nullopt);
LabelMatrix load_partitions_csv(const std::filesystem::path& path,
                                std::optional<int> n_clusters = std::nullopt);

void write_partitions_csv(const LabelMatrix& matrix, const std::vector<std::string>& names,
                          const std::filesystem::path& path);

/// Long rows `dataset,method,run,seed,ari` to `path`, and the per-method summary
/// `dataset,method,mean_ari,sd_ari` to summary_path_for(path).
void write_results_csv(const ExperimentReport& report, const std::filesystem::path& path);
std::filesystem::path summary_path_for(const std::filesystem::path& results_path);

}  // namespace mixsemble
