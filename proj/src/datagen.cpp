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

#include "mixsemble/datagen.hpp"

#include <cmath>
#include <random>

#include <Eigen/Cholesky>

namespace mixsemble {

namespace {

constexpr std::size_t kMaxConsecutiveRejections = 1'000'000;

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

Eigen::MatrixXd rows2(std::initializer_list<std::pair<double, double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), 2);
  Eigen::Index r = 0;
  for (const auto& [a, b] : rows) {
    m(r, 0) = a;
    m(r, 1) = b;
    ++r;
  }
  return m;
}

std::vector<std::string> default_names(Eigen::Index d) {
  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < d; ++j) names.push_back("x" + std::to_string(j + 1));
  return names;
}

// Both samplers share this loop so that an all-zero skew consumes the
// random stream exactly like the plain Gaussian sampler.
ManlySample sample_mixture(const MixtureSpec& spec, std::size_t n, std::uint64_t seed,
                           bool transform) {
  spec.validate();
  if (n == 0) throw Error(ErrorCode::BadSpec, "sample size must be positive");
  const int G = spec.n_components();
  const Eigen::Index d = spec.means.cols();

  std::vector<Eigen::MatrixXd> factors;
  for (const auto& cov : spec.covariances) factors.push_back(Eigen::LLT<Eigen::MatrixXd>(cov).matrixL());
  std::vector<double> cumulative(static_cast<std::size_t>(G));
  double acc = 0.0;
  int last_positive = 0;
  for (int g = 0; g < G; ++g) {
    acc += spec.weights[static_cast<std::size_t>(g)];
    cumulative[static_cast<std::size_t>(g)] = acc;
    if (spec.weights[static_cast<std::size_t>(g)] > 0.0) last_positive = g;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  ManlySample out;
  out.data.features.resize(static_cast<Eigen::Index>(n), d);
  out.latent.resize(static_cast<Eigen::Index>(n), d);
  std::vector<int> truth(n);
  Eigen::VectorXd z(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = unit(rng);
    int g = last_positive;
    for (int c = 0; c < G; ++c) {
      if (u < cumulative[static_cast<std::size_t>(c)] && spec.weights[static_cast<std::size_t>(c)] > 0.0) {
        g = c;
        break;
      }
    }
    truth[i] = g;
    const auto gi = static_cast<std::size_t>(g);

    Eigen::VectorXd y(d);
    for (std::size_t rejections = 0;; ++rejections) {
      if (rejections > kMaxConsecutiveRejections) {
        throw Error(ErrorCode::RejectionOverflow,
                    "component " + std::to_string(g) + " keeps producing draws outside the "
                    "support of the Manly transformation");
      }
      for (Eigen::Index j = 0; j < d; ++j) z(j) = normal(rng);
      y = spec.means.row(g).transpose() + factors[gi] * z;
      if (!transform) break;
      bool feasible = true;
      for (Eigen::Index j = 0; j < d; ++j) {
        if ((*spec.skew)(g, j) * y(j) + 1.0 <= 0.0) feasible = false;
      }
      if (feasible) break;
    }
    const auto row = static_cast<Eigen::Index>(i);
    out.latent.row(row) = y.transpose();
    for (Eigen::Index j = 0; j < d; ++j) {
      out.data.features(row, j) = transform ? manly_inverse(y(j), (*spec.skew)(g, j)) : y(j);
    }
  }
  out.data.truth = Partition(std::move(truth), G);
  out.data.column_names = default_names(d);
  return out;
}

}  // namespace

void MixtureSpec::validate() const {
  const auto G = static_cast<Eigen::Index>(weights.size());
  if (G == 0) throw Error(ErrorCode::BadSpec, "mixture has no components");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::BadSpec, "negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorCode::BadSpec, "weights do not sum to 1");
  }
  if (means.rows() != G || means.cols() < 1 || !means.allFinite()) {
    throw Error(ErrorCode::BadSpec, "means must be a finite G x d matrix");
  }
  const Eigen::Index d = means.cols();
  if (covariances.size() != weights.size()) throw Error(ErrorCode::BadSpec, "need G covariances");
  for (const auto& cov : covariances) {
    if (cov.rows() != d || cov.cols() != d || !cov.allFinite()) {
      throw Error(ErrorCode::BadSpec, "covariance must be d x d");
    }
    if (!cov.isApprox(cov.transpose(), 1e-12)) throw Error(ErrorCode::BadSpec, "covariance not symmetric");
    if (Eigen::LLT<Eigen::MatrixXd>(cov).info() != Eigen::Success) {
      throw Error(ErrorCode::BadSpec, "covariance not positive definite");
    }
  }
  if (skew && (skew->rows() != G || skew->cols() != d || !skew->allFinite())) {
    throw Error(ErrorCode::BadSpec, "skew must be a finite G x d matrix");
  }
}

double manly_inverse(double y, double lambda) {
  return lambda == 0.0 ? y : std::log1p(lambda * y) / lambda;
}

double manly_forward(double x, double lambda) {
  return lambda == 0.0 ? x : std::expm1(lambda * x) / lambda;
}

Dataset sample_gaussian_mixture(const MixtureSpec& spec, std::size_t n, std::uint64_t seed) {
  if (spec.skew) throw Error(ErrorCode::BadSpec, "Gaussian sampler got a skewed spec");
  return sample_mixture(spec, n, seed, false).data;
}

ManlySample sample_manly_mixture_with_latent(const MixtureSpec& spec, std::size_t n,
                                             std::uint64_t seed) {
  if (!spec.skew) throw Error(ErrorCode::BadSpec, "Manly sampler needs skew parameters");
  return sample_mixture(spec, n, seed, true);
}

Dataset sample_manly_mixture(const MixtureSpec& spec, std::size_t n, std::uint64_t seed) {
  return sample_manly_mixture_with_latent(spec, n, seed).data;
}

std::vector<std::string> preset_names() { return {"x2-like", "manly-like", "elongated-like"}; }

Preset preset(std::string_view name) {
  Preset p;
  p.name = std::string(name);
  if (name == "x2-like") {
    // Three well separated Gaussian clusters; every member should find them.
    p.spec.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    p.spec.means = rows2({{0.0, 0.0}, {6.0, 0.5}, {3.0, 5.5}});
    p.spec.covariances = {mat2(1.0, 0.3, 0.3, 1.0), mat2(1.0, -0.2, -0.2, 0.8),
                          mat2(0.8, 0.0, 0.0, 1.2)};
    p.n_items = 300;
  } else if (name == "manly-like") {
    p.spec.weights = {0.25, 0.30, 0.45};
    p.spec.means = rows2({{12.0, 12.0}, {4.0, 4.0}, {4.0, 10.0}});
    p.spec.covariances = {mat2(4.0, 0.0, 0.0, 4.0), mat2(5.0, -1.0, -1.0, 3.0),
                          mat2(2.0, -1.0, -1.0, 2.0)};
    p.spec.skew = rows2({{1.0, 0.5}, {0.5, 0.5}, {1.0, 1.0}});
    p.n_items = 1000;
  } else if (name == "elongated-like") {
    // Strongly correlated clusters of unequal spread.
    p.spec.weights = {0.3, 0.3, 0.4};
    p.spec.means = rows2({{0.0, 0.0}, {4.0, 0.0}, {2.0, 5.0}});
    p.spec.covariances = {mat2(1.0, 0.85, 0.85, 1.0), mat2(1.0, 0.85, 0.85, 1.0),
                          mat2(2.0, -0.5, -0.5, 0.6)};
    p.n_items = 500;
  } else {
    throw Error(ErrorCode::BadSpec, "unknown preset '" + std::string(name) + "'");
  }
  return p;
}

Dataset simulate_preset(std::string_view name, std::uint64_t seed) {
  const Preset p = preset(name);
  return p.spec.skew ? sample_manly_mixture(p.spec, p.n_items, seed)
                     : sample_gaussian_mixture(p.spec, p.n_items, seed);
}

}  // namespace mixsemble
