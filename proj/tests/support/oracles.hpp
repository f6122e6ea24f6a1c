#pragma once

// Independent reference computations used as test oracles. None of these call
// into the library's metric, alignment or EM code.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace oracle {

inline std::vector<int> random_labels(std::mt19937_64& rng, std::size_t n, int G) {
  std::uniform_int_distribution<int> pick(0, G - 1);
  std::vector<int> out(n);
  for (auto& v : out) v = pick(rng);
  return out;
}

// Adjusted Rand index by enumerating all N(N-1)/2 item pairs.
inline double brute_force_ari(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  long double both = 0, only_a = 0, only_b = 0, pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool sa = a[i] == a[j];
      const bool sb = b[i] == b[j];
      both += sa && sb;
      only_a += sa && !sb;
      only_b += !sa && sb;
      pairs += 1;
    }
  }
  const long double same_a = both + only_a;
  const long double same_b = both + only_b;
  const long double expected = same_a * same_b / pairs;
  const long double maximum = (same_a + same_b) / 2;
  if (maximum == expected) return (only_a == 0 && only_b == 0) ? 1.0 : 0.0;
  return static_cast<double>((both - expected) / (maximum - expected));
}

// Largest #{i : reference_i == perm[other_i]} over all G! permutations.
inline std::int64_t exhaustive_best_agreement(const std::vector<int>& reference,
                                              const std::vector<int>& other, int G) {
  std::vector<int> perm(static_cast<std::size_t>(G));
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = -1;
  do {
    std::int64_t hits = 0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
      hits += reference[i] == perm[static_cast<std::size_t>(other[i])];
    }
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Straightforward Dawid-Skene EM in linear space with per-item normalization.
// labels is row-major N x K.
struct DsResult {
  std::vector<double> z;    // N x G
  std::vector<double> pi;   // G
  std::vector<double> eps;  // K x G x G
  double loglik = 0;
  std::vector<int> hard;
};

inline DsResult reference_dawid_skene(const std::vector<int>& labels, int N, int K, int G,
                                      double s, int iterations) {
  DsResult r;
  r.z.assign(static_cast<std::size_t>(N * G), 0.0);
  for (int i = 0; i < N; ++i) {
    for (int k = 0; k < K; ++k) r.z[i * G + labels[i * K + k]] += 1.0 / K;
  }
  auto m_step = [&] {
    r.pi.assign(G, 0.0);
    r.eps.assign(static_cast<std::size_t>(K * G * G), 0.0);
    for (int g = 0; g < G; ++g) {
      double mass = 0;
      for (int i = 0; i < N; ++i) mass += r.z[i * G + g];
      r.pi[g] = mass / N;
      for (int k = 0; k < K; ++k) {
        for (int h = 0; h < G; ++h) {
          double num = s;
          for (int i = 0; i < N; ++i) {
            if (labels[i * K + k] == h) num += r.z[i * G + g];
          }
          r.eps[(k * G + g) * G + h] = num / (G * s + mass);
        }
      }
    }
  };
  auto e_step = [&] {
    r.loglik = 0;
    for (int i = 0; i < N; ++i) {
      double total = 0;
      for (int g = 0; g < G; ++g) {
        double p = r.pi[g];
        for (int k = 0; k < K; ++k) p *= r.eps[(k * G + g) * G + labels[i * K + k]];
        r.z[i * G + g] = p;
        total += p;
      }
      for (int g = 0; g < G; ++g) r.z[i * G + g] /= total;
      r.loglik += std::log(total);
    }
  };
  for (int it = 0; it < iterations; ++it) {
    m_step();
    e_step();
  }
  r.hard.resize(N);
  for (int i = 0; i < N; ++i) {
    int best = 0;
    for (int g = 1; g < G; ++g) {
      if (r.z[i * G + g] > r.z[i * G + best]) best = g;
    }
    r.hard[i] = best;
  }
  return r;
}

// Flips each label to a different uniformly chosen one with probability rate.
inline std::vector<int> with_flips(std::vector<int> labels, int G, double rate,
                                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> shift(1, G - 1);
  for (auto& v : labels) {
    if (u(rng) < rate) v = (v + shift(rng)) % G;
  }
  return labels;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("mixsemble-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path write(const std::string& name, const std::string& text) const {
    auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace oracle
