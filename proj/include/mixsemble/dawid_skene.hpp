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

#include <vector>

#include "mixsemble/core_types.hpp"

namespace mixsemble {

/// Stopping and smoothing controls for the EM loops in this library.
struct EmConfig {
  int max_iterations = 1000;
  /// Stop once |l_t - l_{t-1}| / (1 + |l_t|) falls below this.
  double rel_tolerance = 1e-8;
  /// Pseudocount added to every error-rate numerator (denominator gets G times it).
  double smoothing = 0.01;

  void validate() const;
};

struct ConsensusModel {
  Priors priors;
  ErrorRates error_rates;
  Responsibilities responsibilities;
  /// Log-likelihood (nats) of the parameters after each M-step, starting with
  /// the parameters derived from the vote-share initialization.
  std::vector<double> loglik_trace;
  int n_iterations = 0;
  bool converged = false;
};

struct ModelParameters {
  Priors priors;
  ErrorRates error_rates;
};

/// Vote share of each cluster among the K observers of every item.
Responsibilities init_responsibilities(const LabelMatrix& matrix);

/// Posterior class probabilities given the current parameters, evaluated in
/// log space with per-row max subtraction.
Responsibilities e_step(const LabelMatrix& matrix, const Priors& priors,
                        const ErrorRates& error_rates);

/// Smoothed maximum-likelihood priors and confusion matrices for the given
/// responsibilities. With smoothing == 0 a cluster holding no responsibility
/// mass raises EmptyCluster.
ModelParameters m_step(const LabelMatrix& matrix, const Responsibilities& responsibilities,
                       double smoothing);

/// Observed-data log-likelihood: sum over items of log sum_g pi_g prod_k eps_k[g][x_ik].
double log_likelihood(const LabelMatrix& matrix, const Priors& priors,
                      const ErrorRates& error_rates);

/// Dawid-Skene EM from the vote-share initialization. Deterministic.
ConsensusModel fit(const LabelMatrix& matrix, const EmConfig& config = {});

/// Argmax of each responsibility row; ties go to the lowest cluster index.
Partition hard_labels(const Responsibilities& responsibilities);
inline Partition hard_labels(const ConsensusModel& model) {
  return hard_labels(model.responsibilities);
}

}  // namespace mixsemble
