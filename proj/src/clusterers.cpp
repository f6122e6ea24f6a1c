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

#include "mixsemble/clusterers.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Cholesky>

namespace mixsemble {

namespace {

void require_points(const Dataset& data, int n_clusters) {
  data.validate();
  if (n_clusters < 1) throw Error(ErrorCode::InvalidConfig, "G must be >= 1");
  if (data.n_items() < static_cast<std::size_t>(n_clusters)) {
    throw Error(ErrorCode::TooFewPoints, std::to_string(data.n_items()) + " points for G=" +
                                             std::to_string(n_clusters));
  }
}

// Greedy k-means++: each new center is the best of 2 + ln(G) D^2-sampled
// candidates, judged by the resulting potential. Centers are distinct points.
std::vector<Eigen::Index> kmeanspp_seeds(const Eigen::MatrixXd& x, int n_clusters,
                                         std::mt19937_64& rng) {
  const Eigen::Index n = x.rows();
  const int trials = 2 + static_cast<int>(std::log(static_cast<double>(n_clusters)));
  std::vector<Eigen::Index> chosen;
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  chosen.push_back(first(rng));
  taken[static_cast<std::size_t>(chosen.back())] = 1;

  Eigen::VectorXd d2 = (x.rowwise() - x.row(chosen.back())).rowwise().squaredNorm();
  std::vector<double> w(static_cast<std::size_t>(n));
  while (static_cast<int>(chosen.size()) < n_clusters) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      w[static_cast<std::size_t>(i)] = taken[static_cast<std::size_t>(i)] ? 0.0 : d2(i);
      total += w[static_cast<std::size_t>(i)];
    }
    if (!(total > 0.0)) {
      // Every remaining point coincides with a center.
      for (Eigen::Index i = 0; i < n; ++i) {
        w[static_cast<std::size_t>(i)] = taken[static_cast<std::size_t>(i)] ? 0.0 : 1.0;
      }
    }
    std::discrete_distribution<Eigen::Index> pick(w.begin(), w.end());
    Eigen::Index best = -1;
    double best_potential = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_d2;
    for (int t = 0; t < trials; ++t) {
      const Eigen::Index candidate = pick(rng);
      Eigen::VectorXd cand_d2 = d2.cwiseMin((x.rowwise() - x.row(candidate)).rowwise().squaredNorm());
      const double potential = cand_d2.sum();
      if (potential < best_potential) {
        best_potential = potential;
        best = candidate;
        best_d2 = std::move(cand_d2);
      }
    }
    chosen.push_back(best);
    taken[static_cast<std::size_t>(best)] = 1;
    d2 = std::move(best_d2);
  }
  return chosen;
}

double sq_dist(const Eigen::MatrixXd& x, Eigen::Index i, const Eigen::MatrixXd& c, Eigen::Index g) {
  return (x.row(i) - c.row(g)).squaredNorm();
}

// Log-density of every point under one component, via the Cholesky factor.
Eigen::VectorXd log_gaussian(const Eigen::MatrixXd& x, const Eigen::RowVectorXd& mean,
                             const Eigen::LLT<Eigen::MatrixXd>& chol) {
  const auto d = static_cast<double>(x.cols());
  const Eigen::MatrixXd diff = (x.rowwise() - mean).transpose();
  const Eigen::MatrixXd solved = chol.matrixL().solve(diff);
  const double log_det = 2.0 * chol.matrixLLT().diagonal().array().log().sum();
  const double constant = -0.5 * (d * std::log(2.0 * std::numbers::pi) + log_det);
  return (constant - 0.5 * solved.colwise().squaredNorm().array()).matrix().transpose();
}

struct GmmState {
  GmmParams params;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> factors;
};

GmmState gmm_m_step(const Eigen::MatrixXd& x, const Eigen::MatrixXd& resp,
                    CovarianceFamily family, double floor) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  const Eigen::Index G = resp.cols();
  GmmState state;
  state.params.weights.resize(G);
  state.params.means.resize(G, d);
  for (Eigen::Index g = 0; g < G; ++g) {
    const double mass = resp.col(g).sum();
    if (!(mass > 1e-10)) {
      throw Error(ErrorCode::SingularComponent,
                  "component " + std::to_string(g) + " has vanished (mass " +
                      std::to_string(mass) + ")");
    }
    state.params.weights(g) = mass / static_cast<double>(n);
    const Eigen::RowVectorXd mean = (resp.col(g).transpose() * x) / mass;
    state.params.means.row(g) = mean;
    const Eigen::MatrixXd centered = x.rowwise() - mean;
    Eigen::MatrixXd cov(d, d);
    switch (family) {
      case CovarianceFamily::Full:
        cov = (centered.transpose() * resp.col(g).asDiagonal() * centered) / mass;
        break;
      case CovarianceFamily::Diagonal: {
        const Eigen::VectorXd var =
            (centered.array().square().colwise() * resp.col(g).array()).colwise().sum().transpose() /
            mass;
        cov = var.asDiagonal();
        break;
      }
      case CovarianceFamily::Spherical: {
        const double var =
            (centered.array().square().colwise() * resp.col(g).array()).sum() /
            (mass * static_cast<double>(d));
        cov = Eigen::MatrixXd::Identity(d, d) * var;
        break;
      }
    }
    cov = 0.5 * (cov + cov.transpose());
    cov.diagonal().array() += floor;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::SingularComponent,
                  "component " + std::to_string(g) + " covariance is not positive definite");
    }
    state.params.covariances.push_back(std::move(cov));
    state.factors.push_back(std::move(llt));
  }
  return state;
}

// Returns the total log-likelihood and overwrites resp with the posterior.
double gmm_e_step(const Eigen::MatrixXd& x, const GmmState& state, Eigen::MatrixXd& resp) {
  const Eigen::Index n = x.rows();
  const Eigen::Index G = state.params.weights.size();
  resp.resize(n, G);
  for (Eigen::Index g = 0; g < G; ++g) {
    resp.col(g) = log_gaussian(x, state.params.means.row(g), state.factors[static_cast<std::size_t>(g)]);
    resp.col(g).array() += std::log(state.params.weights(g));
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = resp.row(i).maxCoeff();
    resp.row(i) = (resp.row(i).array() - m).exp().matrix();
    const double s = resp.row(i).sum();
    resp.row(i) /= s;
    total += m + std::log(s);
  }
  if (!std::isfinite(total)) throw Error(ErrorCode::NonFinite, "mixture log-likelihood is not finite");
  return total;
}

Partition argmax_rows(const Eigen::MatrixXd& resp) {
  std::vector<int> labels(static_cast<std::size_t>(resp.rows()));
  for (Eigen::Index i = 0; i < resp.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index g = 1; g < resp.cols(); ++g) {
      if (resp(i, g) > resp(i, best)) best = g;
    }
    labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return Partition(std::move(labels), static_cast<int>(resp.cols()));
}

}  // namespace

std::string_view to_string(CovarianceFamily family) noexcept {
  switch (family) {
    case CovarianceFamily::Spherical: return "spherical";
    case CovarianceFamily::Diagonal: return "diagonal";
    case CovarianceFamily::Full: return "full";
  }
  return "unknown";
}

CovarianceFamily parse_covariance_family(std::string_view name) {
  if (name == "spherical") return CovarianceFamily::Spherical;
  if (name == "diagonal") return CovarianceFamily::Diagonal;
  if (name == "full") return CovarianceFamily::Full;
  throw Error(ErrorCode::InvalidConfig, "unknown covariance family '" + std::string(name) + "'");
}

EmConfig default_gmm_config() {
  EmConfig config;
  config.max_iterations = 500;
  config.rel_tolerance = 1e-8;
  config.smoothing = 0.0;
  return config;
}

FitResult kmeans(const Dataset& data, int n_clusters, std::uint64_t seed, int max_iter) {
  require_points(data, n_clusters);
  if (max_iter < 1) throw Error(ErrorCode::InvalidConfig, "max_iter must be >= 1");
  const Eigen::MatrixXd& x = data.features;
  const Eigen::Index n = x.rows();
  const Eigen::Index G = n_clusters;

  std::mt19937_64 rng(seed);
  Eigen::MatrixXd centers(G, x.cols());
  const auto seeds = kmeanspp_seeds(x, n_clusters, rng);
  for (Eigen::Index g = 0; g < G; ++g) centers.row(g) = x.row(seeds[static_cast<std::size_t>(g)]);

  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::vector<double> trace;
  bool converged = false;
  int iter = 0;
  while (iter < max_iter) {
    bool changed = false;
    std::vector<Eigen::Index> sizes(static_cast<std::size_t>(G), 0);
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      double best_d = sq_dist(x, i, centers, 0);
      for (Eigen::Index g = 1; g < G; ++g) {
        const double dg = sq_dist(x, i, centers, g);
        if (dg < best_d) {
          best_d = dg;
          best = g;
        }
      }
      auto& slot = labels[static_cast<std::size_t>(i)];
      if (slot != static_cast<int>(best)) changed = true;
      slot = static_cast<int>(best);
      dist[static_cast<std::size_t>(i)] = best_d;
      ++sizes[static_cast<std::size_t>(best)];
    }
    for (Eigen::Index g = 0; g < G; ++g) {
      if (sizes[static_cast<std::size_t>(g)] > 0) continue;
      // Move the worst-fit point (from a cluster that keeps at least one member).
      Eigen::Index far = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto owner = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
        if (sizes[owner] < 2) continue;
        if (far < 0 || dist[static_cast<std::size_t>(i)] > dist[static_cast<std::size_t>(far)]) far = i;
      }
      --sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
      labels[static_cast<std::size_t>(far)] = static_cast<int>(g);
      sizes[static_cast<std::size_t>(g)] = 1;
      dist[static_cast<std::size_t>(far)] = 0.0;
      changed = true;
    }
    if (!changed && iter > 0) {
      converged = true;
      break;
    }
    centers.setZero();
    for (Eigen::Index i = 0; i < n; ++i) centers.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
    for (Eigen::Index g = 0; g < G; ++g) {
      centers.row(g) /= static_cast<double>(sizes[static_cast<std::size_t>(g)]);
    }
    double wcss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) wcss += sq_dist(x, i, centers, labels[static_cast<std::size_t>(i)]);
    trace.push_back(wcss);
    ++iter;
  }

  FitResult result{Partition(std::move(labels), n_clusters), std::nullopt, std::nullopt,
                   -trace.back(), iter, converged, std::move(trace)};
  return result;
}

FitResult gmm_fit(const Dataset& data, int n_clusters, CovarianceFamily family,
                  const Partition& init, const EmConfig& config) {
  require_points(data, n_clusters);
  config.validate();
  if (init.size() != data.n_items()) {
    throw Error(ErrorCode::LengthMismatch, "initial partition length differs from data");
  }
  if (init.n_clusters() != n_clusters) {
    throw Error(ErrorCode::ClusterCountMismatch, "initial partition G differs from requested G");
  }
  const Eigen::MatrixXd& x = data.features;
  const Eigen::Index n = x.rows();
  const auto d = static_cast<double>(x.cols());

  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  const double total_var = centered.array().square().sum() / static_cast<double>(n > 1 ? n - 1 : 1);
  const double floor = 1e-6 * total_var / d;

  Eigen::MatrixXd resp = Eigen::MatrixXd::Zero(n, n_clusters);
  for (Eigen::Index i = 0; i < n; ++i) resp(i, init[static_cast<std::size_t>(i)]) = 1.0;

  GmmState state = gmm_m_step(x, resp, family, floor);
  std::vector<double> trace{gmm_e_step(x, state, resp)};
  int iter = 0;
  bool converged = false;
  while (iter < config.max_iterations) {
    state = gmm_m_step(x, resp, family, floor);
    const double ll = gmm_e_step(x, state, resp);
    ++iter;
    const double previous = trace.back();
    trace.push_back(ll);
    if (std::abs(ll - previous) / (1.0 + std::abs(ll)) < config.rel_tolerance) {
      converged = true;
      break;
    }
  }

  std::vector<double> flat(static_cast<std::size_t>(resp.size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index g = 0; g < resp.cols(); ++g) {
      flat[static_cast<std::size_t>(i * resp.cols() + g)] = resp(i, g);
    }
  }
  Partition partition = argmax_rows(resp);
  const double final_ll = trace.back();
  return {std::move(partition), std::move(state.params),
          Responsibilities(std::move(flat), static_cast<std::size_t>(n), n_clusters), final_ll,
          iter, converged, std::move(trace)};
}

}  // namespace mixsemble
