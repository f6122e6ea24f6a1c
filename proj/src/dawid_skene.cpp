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

#include "mixsemble/dawid_skene.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mixsemble {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_shapes(const LabelMatrix& matrix, const Priors& priors, const ErrorRates& rates) {
  if (priors.n_clusters() != matrix.n_clusters() || rates.n_clusters() != matrix.n_clusters()) {
    throw Error(ErrorCode::ClusterCountMismatch, "parameters and label matrix disagree on G");
  }
  if (rates.n_observers() != matrix.n_observers()) {
    throw Error(ErrorCode::LengthMismatch, "error rates and label matrix disagree on K");
  }
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

struct Posterior {
  Responsibilities responsibilities;
  double loglik;
};

// Shared kernel of e_step and log_likelihood. Summation order over observers
// and clusters is fixed, so results are reproducible bit for bit.
template <bool kNormalize>
void accumulate_log_joint(const LabelMatrix& matrix, const Priors& priors,
                          const ErrorRates& rates, std::vector<double>* z, double* loglik) {
  check_shapes(matrix, priors, rates);
  const int g_count = matrix.n_clusters();
  const auto G = static_cast<std::size_t>(g_count);
  const std::size_t K = matrix.n_observers();

  std::vector<double> log_pi(G);
  for (std::size_t g = 0; g < G; ++g) log_pi[g] = safe_log(priors.values()[g]);
  std::vector<double> log_eps(rates.values().size());
  for (std::size_t j = 0; j < log_eps.size(); ++j) log_eps[j] = safe_log(rates.values()[j]);

  if (z) z->assign(matrix.n_items() * G, 0.0);
  std::vector<double> lp(G);
  double total = 0.0;
  for (std::size_t i = 0; i < matrix.n_items(); ++i) {
    const auto row = matrix.row(i);
    double max_lp = kNegInf;
    for (std::size_t g = 0; g < G; ++g) {
      double acc = log_pi[g];
      for (std::size_t k = 0; k < K; ++k) {
        acc += log_eps[(k * G + g) * G + static_cast<std::size_t>(row[k])];
      }
      lp[g] = acc;
      if (acc > max_lp) max_lp = acc;
    }
    if (max_lp == kNegInf) {
      throw Error(kNormalize ? ErrorCode::DegenerateRow : ErrorCode::NonFinite,
                  "item " + std::to_string(i) + " has zero likelihood under every cluster");
    }
    double sum = 0.0;
    for (std::size_t g = 0; g < G; ++g) {
      lp[g] = std::exp(lp[g] - max_lp);
      sum += lp[g];
    }
    total += max_lp + std::log(sum);
    if (z) {
      for (std::size_t g = 0; g < G; ++g) (*z)[i * G + g] = lp[g] / sum;
    }
  }
  if (!std::isfinite(total)) throw Error(ErrorCode::NonFinite, "log-likelihood is not finite");
  if (loglik) *loglik = total;
}

Posterior e_step_with_loglik(const LabelMatrix& matrix, const Priors& priors,
                             const ErrorRates& rates) {
  std::vector<double> z;
  double ll = 0.0;
  accumulate_log_joint<true>(matrix, priors, rates, &z, &ll);
  return {Responsibilities(std::move(z), matrix.n_items(), matrix.n_clusters()), ll};
}

}  // namespace

void EmConfig::validate() const {
  if (max_iterations < 1) throw Error(ErrorCode::InvalidConfig, "max_iterations must be >= 1");
  if (!(rel_tolerance > 0.0)) throw Error(ErrorCode::InvalidConfig, "rel_tolerance must be > 0");
  if (!(smoothing >= 0.0) || !std::isfinite(smoothing)) {
    throw Error(ErrorCode::InvalidConfig, "smoothing must be >= 0");
  }
}

Responsibilities init_responsibilities(const LabelMatrix& matrix) {
  const auto G = static_cast<std::size_t>(matrix.n_clusters());
  const std::size_t K = matrix.n_observers();
  std::vector<double> z(matrix.n_items() * G, 0.0);
  for (std::size_t i = 0; i < matrix.n_items(); ++i) {
    std::vector<std::size_t> votes(G, 0);
    for (int label : matrix.row(i)) ++votes[static_cast<std::size_t>(label)];
    for (std::size_t g = 0; g < G; ++g) {
      z[i * G + g] = static_cast<double>(votes[g]) / static_cast<double>(K);
    }
  }
  return Responsibilities(std::move(z), matrix.n_items(), matrix.n_clusters());
}

Responsibilities e_step(const LabelMatrix& matrix, const Priors& priors,
                        const ErrorRates& error_rates) {
  return e_step_with_loglik(matrix, priors, error_rates).responsibilities;
}

double log_likelihood(const LabelMatrix& matrix, const Priors& priors,
                      const ErrorRates& error_rates) {
  double ll = 0.0;
  accumulate_log_joint<false>(matrix, priors, error_rates, nullptr, &ll);
  return ll;
}

ModelParameters m_step(const LabelMatrix& matrix, const Responsibilities& responsibilities,
                       double smoothing) {
  if (responsibilities.n_items() != matrix.n_items()) {
    throw Error(ErrorCode::LengthMismatch, "responsibilities and label matrix disagree on N");
  }
  if (responsibilities.n_clusters() != matrix.n_clusters()) {
    throw Error(ErrorCode::ClusterCountMismatch,
                "responsibilities and label matrix disagree on G");
  }
  if (!(smoothing >= 0.0)) throw Error(ErrorCode::InvalidConfig, "smoothing must be >= 0");

  const auto G = static_cast<std::size_t>(matrix.n_clusters());
  const std::size_t K = matrix.n_observers();
  const std::size_t N = matrix.n_items();

  std::vector<double> mass(G, 0.0);
  std::vector<double> counts(K * G * G, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    const auto z = responsibilities.row(i);
    const auto row = matrix.row(i);
    for (std::size_t g = 0; g < G; ++g) {
      mass[g] += z[g];
      for (std::size_t k = 0; k < K; ++k) {
        counts[(k * G + g) * G + static_cast<std::size_t>(row[k])] += z[g];
      }
    }
  }

  std::vector<double> pi(G);
  for (std::size_t g = 0; g < G; ++g) pi[g] = mass[g] / static_cast<double>(N);

  const double pseudo_total = static_cast<double>(G) * smoothing;
  for (std::size_t g = 0; g < G; ++g) {
    const double denom = pseudo_total + mass[g];
    if (!(denom > 0.0)) {
      throw Error(ErrorCode::EmptyCluster,
                  "cluster " + std::to_string(g) + " holds no responsibility mass");
    }
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t h = 0; h < G; ++h) {
        double& cell = counts[(k * G + g) * G + h];
        cell = (smoothing + cell) / denom;
      }
    }
  }
  return {Priors(std::move(pi)), ErrorRates(std::move(counts), K, matrix.n_clusters())};
}

ConsensusModel fit(const LabelMatrix& matrix, const EmConfig& config) {
  config.validate();
  ModelParameters params = m_step(matrix, init_responsibilities(matrix), config.smoothing);
  Posterior post = e_step_with_loglik(matrix, params.priors, params.error_rates);

  std::vector<double> trace{post.loglik};
  int iterations = 0;
  bool converged = false;
  while (iterations < config.max_iterations) {
    params = m_step(matrix, post.responsibilities, config.smoothing);
    post = e_step_with_loglik(matrix, params.priors, params.error_rates);
    ++iterations;
    const double previous = trace.back();
    trace.push_back(post.loglik);
    if (std::abs(post.loglik - previous) / (1.0 + std::abs(post.loglik)) < config.rel_tolerance) {
      converged = true;
      break;
    }
  }
  return {std::move(params.priors), std::move(params.error_rates),
          std::move(post.responsibilities), std::move(trace), iterations, converged};
}

Partition hard_labels(const Responsibilities& responsibilities) {
  std::vector<int> labels(responsibilities.n_items());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto z = responsibilities.row(i);
    int best = 0;
    for (int g = 1; g < responsibilities.n_clusters(); ++g) {
      if (z[static_cast<std::size_t>(g)] > z[static_cast<std::size_t>(best)]) best = g;
    }
    labels[i] = best;
  }
  return Partition(std::move(labels), responsibilities.n_clusters());
}

}  // namespace mixsemble
