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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mixsemble/clusterers.hpp"
#include "mixsemble/dawid_skene.hpp"
#include "mixsemble/report.hpp"

namespace mixsemble {

struct MemberSpec {
  enum class Kind { KMeans, Gmm };

  std::string name;
  Kind kind = Kind::KMeans;
  CovarianceFamily family = CovarianceFamily::Full;

  /// "kmeans", "gmm-spherical", "gmm-diagonal" or "gmm-full".
  static MemberSpec parse(const std::string& name);
};

std::vector<MemberSpec> default_members();

struct DatasetSpec {
  std::string name;
  std::optional<std::string> preset;
  std::optional<std::filesystem::path> csv_path;
  std::optional<std::string> label_column;
  /// Replaces the built-in members with the columns of this partition file.
  std::optional<std::filesystem::path> partitions_path;
  std::optional<int> n_clusters;
  /// Seed used to draw preset data once per experiment.
  std::uint64_t data_seed = 0;
};

struct ExperimentConfig {
  std::vector<DatasetSpec> datasets;
  std::vector<MemberSpec> members = default_members();
  int n_runs = 100;
  std::uint64_t base_seed = 1;
  EmConfig consensus_em{};
  EmConfig gmm_em = default_gmm_config();
  int kmeans_max_iter = 100;
  std::size_t reference_column = 0;
  std::optional<std::filesystem::path> output_dir;
  int jobs = 1;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Parses the JSON configuration text. Relative paths inside it are resolved
/// against base_dir.
ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// For every dataset and run r (seed base_seed + r): fit the members from a
/// shared k-means initialization, fuse them by aligned majority vote and by
/// Dawid-Skene EM, and score everything against the ground truth.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Plain-text tables of per-member and per-fusion mean(sd) ARI; '*' marks the best entry.
std::string summarize(const ExperimentReport& report);

enum class FusionMethod { DawidSkene, Vote };

/// One-shot fusion of an existing label matrix.
Partition fuse(const LabelMatrix& matrix, FusionMethod method, const EmConfig& em = {},
               std::size_t reference_column = 0);

}  // namespace mixsemble
