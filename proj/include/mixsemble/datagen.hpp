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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "mixsemble/dataset.hpp"

namespace mixsemble {

/// Parameters of a finite mixture to sample from. When `skew` is present,
/// row g holds the per-dimension Manly parameters of component g.
struct MixtureSpec {
  std::vector<double> weights;
  Eigen::MatrixXd means;                     // G x d
  std::vector<Eigen::MatrixXd> covariances;  // G of d x d, SPD
  std::optional<Eigen::MatrixXd> skew;       // G x d

  int n_components() const noexcept { return static_cast<int>(weights.size()); }
  /// Throws BadSpec.
  void validate() const;
};

/// x = log(lambda * y + 1) / lambda, identity at lambda == 0.
double manly_inverse(double y, double lambda);
/// y = (exp(lambda * x) - 1) / lambda, identity at lambda == 0.
double manly_forward(double x, double lambda);

Dataset sample_gaussian_mixture(const MixtureSpec& spec, std::size_t n, std::uint64_t seed);

struct ManlySample {
  Dataset data;
  Eigen::MatrixXd latent;  // the accepted Gaussian draws, before transformation
};

/// Draws y from the component Gaussian and emits the inverse-Manly transform
/// of it. Draws with lambda_j * y_j + 1 <= 0 in any dimension are redrawn;
/// more than 1e6 consecutive redraws raise RejectionOverflow.
ManlySample sample_manly_mixture_with_latent(const MixtureSpec& spec, std::size_t n,
                                             std::uint64_t seed);
Dataset sample_manly_mixture(const MixtureSpec& spec, std::size_t n, std::uint64_t seed);

struct Preset {
  std::string name;
  MixtureSpec spec;
  std::size_t n_items = 0;
};

/// "x2-like", "manly-like", "elongated-like".
std::vector<std::string> preset_names();
/// Throws BadSpec for an unknown name.
Preset preset(std::string_view name);
Dataset simulate_preset(std::string_view name, std::uint64_t seed);

}  // namespace mixsemble
