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
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "mixsemble/core_types.hpp"
#include "mixsemble/dataset.hpp"
#include "mixsemble/dawid_skene.hpp"

namespace mixsemble {

enum class CovarianceFamily { Spherical, Diagonal, Full };

std::string_view to_string(CovarianceFamily family) noexcept;
/// Accepts "spherical", "diagonal" or "full"; throws InvalidConfig otherwise.
CovarianceFamily parse_covariance_family(std::string_view name);

struct GmmParams {
  Eigen::VectorXd weights;                  // G
  Eigen::MatrixXd means;                    // G x d
  std::vector<Eigen::MatrixXd> covariances;  // G of d x d
};

struct FitResult {
  Partition partition;
  std::optional<GmmParams> params;            // absent for k-means
  std::optional<Responsibilities> responsibilities;  // absent for k-means
  /// Final log-likelihood for mixtures; minus the within-cluster sum of
  /// squares for k-means.
  double loglik = 0.0;
  int n_iterations = 0;
  bool converged = false;
  /// Log-likelihood per EM iteration (mixtures) or within-cluster sum of
  /// squares per Lloyd iteration (k-means).
  std::vector<double> objective_trace;
};

/// Lloyd's algorithm from greedy k-means++ seeding over distinct data points.
/// Empty clusters are repaired by moving in the point farthest from its
/// current center.
FitResult kmeans(const Dataset& data, int n_clusters, std::uint64_t seed, int max_iter = 100);

/// Gaussian-mixture EM started from a hard partition, with the covariance
/// M-step constrained to the family and a diagonal floor of
/// 1e-6 * trace(sample covariance) / d added to every component.
FitResult gmm_fit(const Dataset& data, int n_clusters, CovarianceFamily family,
                  const Partition& init, const EmConfig& config);

/// Default EM controls for mixtures (smoothing is ignored).
EmConfig default_gmm_config();

}  // namespace mixsemble
