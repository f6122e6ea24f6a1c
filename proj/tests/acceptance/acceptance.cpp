// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "mixsemble/alignment.hpp"
#include "mixsemble/datagen.hpp"
#include "mixsemble/dawid_skene.hpp"
#include "mixsemble/harness.hpp"
#include "mixsemble/io.hpp"
#include "mixsemble/metrics.hpp"
#include "oracles.hpp"

using namespace mixsemble;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failed = 0;

void criterion(const char* name, double time_limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = time_limit_s <= 0 || secs < time_limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++g_failed;
  char timing[96];
  if (time_limit_s > 0) {
    std::snprintf(timing, sizeof timing, "%.2fs < %.0fs%s", secs, time_limit_s, in_time ? "" : " EXCEEDED");
  } else {
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
  }
  std::printf("%s  %-28s [%s]  %s\n", pass ? "PASS" : "FAIL", name, timing, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int worker_count() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

ExperimentConfig regime_config(const std::vector<DatasetSpec>& datasets, int n_runs) {
  ExperimentConfig c;
  c.datasets = datasets;
  c.members = {MemberSpec::parse("kmeans"), MemberSpec::parse("gmm-diagonal"),
               MemberSpec::parse("gmm-full")};
  c.n_runs = n_runs;
  c.jobs = worker_count();
  return c;
}

DatasetSpec preset_dataset(const std::string& name) {
  DatasetSpec d;
  d.name = name;
  d.preset = name;
  return d;
}

double summary_mean(const ExperimentReport& r, const std::string& dataset, const std::string& method) {
  for (const auto& s : r.summaries) {
    if (s.dataset == dataset && s.method == method) return s.mean;
  }
  throw Error(ErrorCode::EmptyReport, "no summary for " + dataset + "/" + method);
}

LabelMatrix random_ds_instance(std::mt19937_64& rng, std::size_t N, std::size_t K, int G) {
  std::uniform_int_distribution<int> pick(0, G - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<int> e(N * K);
  for (std::size_t i = 0; i < N; ++i) {
    const int truth = pick(rng);
    for (std::size_t k = 0; k < K; ++k) e[i * K + k] = u(rng) < 0.6 ? truth : pick(rng);
  }
  return LabelMatrix(e, N, K, G);
}

}  // namespace

int main() {
  std::printf("mixsemble acceptance checks\n");

  criterion("ari-oracle-equivalence", 5, [] {
    std::mt19937_64 rng(20240501);
    std::uniform_int_distribution<int> n_pick(2, 50), g_pick(1, 5);
    double worst = 0;
    for (int t = 0; t < 500; ++t) {
      const auto n = static_cast<std::size_t>(n_pick(rng));
      const int ga = g_pick(rng), gb = g_pick(rng);
      const auto a = oracle::random_labels(rng, n, ga);
      const auto b = oracle::random_labels(rng, n, gb);
      worst = std::max(worst, std::abs(adjusted_rand_index(Partition(a, ga), Partition(b, gb)) -
                                        oracle::brute_force_ari(a, b)));
    }
    return Outcome{worst <= 1e-12, fmt("500 pairs, max |formula - pair count| = %.3g (tol 1e-12)", worst)};
  });

  criterion("ari-anchors", 0, [] {
    std::mt19937_64 rng(7);
    bool identical_exact = true;
    for (int t = 0; t < 50; ++t) {
      const auto a = oracle::random_labels(rng, 2 + t, 1 + t % 5);
      const Partition p(a, 1 + t % 5);
      identical_exact = identical_exact && adjusted_rand_index(p, p) == 1.0;
    }
    double sum = 0;
    for (int t = 0; t < 1000; ++t) {
      sum += adjusted_rand_index(Partition(oracle::random_labels(rng, 100, 3), 3),
                                 Partition(oracle::random_labels(rng, 100, 3), 3));
    }
    const double mean = sum / 1000;
    return Outcome{identical_exact && std::abs(mean) <= 0.02,
                   std::string("identical -> 1.0 exactly: ") + (identical_exact ? "yes" : "no") +
                       fmt("; random N=100 G=3 mean ARI over 1000 pairs = %.5f (|.| <= 0.02)", mean)};
  });

  criterion("alignment-oracle", 10, [] {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> g_pick(1, 6), n_pick(2, 60);
    int mismatches = 0;
    for (int t = 0; t < 200; ++t) {
      const int G = g_pick(rng);
      const auto n = static_cast<std::size_t>(n_pick(rng));
      const auto r = oracle::random_labels(rng, n, G);
      const auto o = oracle::random_labels(rng, n, G);
      if (best_permutation(Partition(r, G), Partition(o, G)).agreement !=
          oracle::exhaustive_best_agreement(r, o, G)) {
        ++mismatches;
      }
    }
    return Outcome{mismatches == 0, fmt("200 pairs G<=6, Hungarian vs exhaustive G! mismatches = %.0f", mismatches)};
  });

  criterion("em-monotonicity", 0, [] {
    double worst_exact = 0, worst_penalized = 0, worst_sum = 0;
    int fits = 0;
    for (std::size_t N : {20, 100}) {
      for (std::size_t K : {2, 5}) {
        for (int G : {2, 4}) {
          for (int seed = 0; seed < 10; ++seed) {
            std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 1000003 + N * 101 + K * 11 + G);
            const auto m = random_ds_instance(rng, N, K, G);
            ++fits;
            // Unsmoothed maximum-likelihood EM: the fit's own trace.
            EmConfig exact;
            exact.smoothing = 0.0;
            const auto model = fit(m, exact);
            for (std::size_t t = 1; t < model.loglik_trace.size(); ++t) {
              worst_exact = std::min(worst_exact, model.loglik_trace[t] - model.loglik_trace[t - 1]);
            }
            worst_sum = std::max({worst_sum, max_row_sum_error(model.responsibilities.values(), G),
                                  max_row_sum_error(model.error_rates.values(), G),
                                  max_row_sum_error(model.priors.values(), G)});
            // Default smoothing: the update ascends l + s * sum log eps.
            const double s = EmConfig{}.smoothing;
            auto z = init_responsibilities(m);
            double previous = -INFINITY;
            for (int it = 0; it < 200; ++it) {
              const auto p = m_step(m, z, s);
              double objective = log_likelihood(m, p.priors, p.error_rates);
              for (double v : p.error_rates.values()) objective += s * std::log(v);
              if (it > 0) worst_penalized = std::min(worst_penalized, objective - previous);
              previous = objective;
              z = e_step(m, p.priors, p.error_rates);
              worst_sum = std::max({worst_sum, max_row_sum_error(z.values(), G),
                                    max_row_sum_error(p.error_rates.values(), G),
                                    max_row_sum_error(p.priors.values(), G)});
            }
          }
        }
      }
    }
    const bool pass = worst_exact >= -1e-9 && worst_penalized >= -1e-9 && worst_sum <= 1e-9;
    return Outcome{pass, fmt("%.0f fits; min step: loglik (s=0) %.3g, penalized objective (s=0.01) %.3g; "
                             "max |row sum - 1| %.3g",
                             fits, worst_exact, worst_penalized, worst_sum)};
  });

  criterion("unanimity-fixed-point", 0, [] {
    std::mt19937_64 rng(5);
    bool all = true;
    for (int t = 0; t < 20; ++t) {
      const int G = 2 + t % 4;
      const std::size_t N = 30 + static_cast<std::size_t>(t), K = 2 + static_cast<std::size_t>(t % 4);
      const auto labels = oracle::random_labels(rng, N, G);
      std::vector<int> e;
      for (int v : labels) e.insert(e.end(), K, v);
      const Partition common(labels, G);
      const auto consensus = hard_labels(fit(LabelMatrix(e, N, K, G)));
      all = all && consensus == common && adjusted_rand_index(consensus, common) == 1.0;
    }
    return Outcome{all, std::string("20 unanimous matrices: hard labels equal the common column, ARI = 1.0: ") +
                            (all ? "yes" : "no")};
  });

  criterion("noisy-observer-recovery", 1, [] {
    std::mt19937_64 rng(2718);
    const int N = 200, K = 3, G = 3;
    const auto truth = oracle::random_labels(rng, N, G);
    const auto noisy = oracle::with_flips(truth, G, 0.3, rng);
    std::vector<int> e;
    for (int i = 0; i < N; ++i) e.insert(e.end(), {truth[i], truth[i], noisy[i]});
    const auto model = fit(LabelMatrix(e, N, K, G));
    const double ari = adjusted_rand_index(hard_labels(model), Partition(truth, G));
    double diag = 0;
    for (int g = 0; g < G; ++g) diag += model.error_rates(2, g, g) / G;
    return Outcome{ari == 1.0 && diag >= 0.6 && diag <= 0.8,
                   fmt("ARI vs truth = %.6f (need 1.0); flipped member eps diagonal mean = %.4f (in [0.6, 0.8])",
                       ari, diag)};
  });

  criterion("easy-regime-x2-like", 30, [] {
    const auto r = run_experiment(regime_config({preset_dataset("x2-like")}, 20));
    double lowest = 1.0;
    std::string means;
    for (const auto& s : r.summaries) {
      lowest = std::min(lowest, s.mean);
      means += " " + s.method + "=" + format_fixed4(s.mean);
    }
    const double gap = std::abs(summary_mean(r, "x2-like", "vote") - summary_mean(r, "x2-like", "mixsemble"));
    return Outcome{lowest >= 0.95 && gap <= 0.02,
                   fmt("min mean %.4f (>= 0.95), |vote - mixsemble| = %.4f (<= 0.02);", lowest, gap) + means};
  });

  criterion("ordering-property", 180, [] {
    std::vector<DatasetSpec> suite;
    for (const auto& name : preset_names()) suite.push_back(preset_dataset(name));
    const auto r = run_experiment(regime_config(suite, 20));
    bool bounded = true;
    int above_mid = 0;
    std::string detail;
    for (const auto& d : suite) {
      const double lo = summary_mean(r, d.name, "min");
      const double hi = summary_mean(r, d.name, "max");
      const double ds = summary_mean(r, d.name, "mixsemble");
      const double mid = 0.5 * (lo + hi);
      bounded = bounded && ds >= lo && ds <= hi + 0.01;
      above_mid += ds >= mid;
      char buf[200];
      std::snprintf(buf, sizeof buf, " %s min=%.4f max=%.4f mid=%.4f mixsemble=%.4f%s;", d.name.c_str(), lo,
                    hi, mid, ds, ds >= mid ? "" : "(<mid)");
      detail += buf;
    }
    return Outcome{bounded && above_mid >= 2,
                   std::string("within [min, max+0.01] on all: ") + (bounded ? "yes" : "no") +
                       fmt("; >= midpoint on %.0f of 3 (need 2);", above_mid) + detail};
  });

  criterion("iris-fixture", 120, [] {
    DatasetSpec iris;
    iris.name = "iris";
    iris.csv_path = MIXSEMBLE_DATA_DIR "/iris.csv";
    iris.label_column = "species";
    const auto r = run_experiment(regime_config({iris}, 100));
    double best = -1;
    for (const auto& m : r.member_names) best = std::max(best, summary_mean(r, "iris", m));
    const double vote = summary_mean(r, "iris", "vote");
    const double ds = summary_mean(r, "iris", "mixsemble");
    const double lo = summary_mean(r, "iris", "min");
    return Outcome{best >= 0.80 && ds >= vote - 0.05 && ds >= lo,
                   fmt("best member %.4f (>= 0.80); mixsemble %.4f vs vote %.4f (>= vote - 0.05) and per-run min %.4f",
                       best, ds, vote, lo)};
  });

  criterion("determinism", 0, [] {
    oracle::TempDir dir;
    ExperimentConfig c = regime_config({preset_dataset("manly-like"), preset_dataset("elongated-like")}, 8);
    c.members = default_members();
    write_results_csv(run_experiment(c), dir.path() / "first.csv");
    write_results_csv(run_experiment(c), dir.path() / "second.csv");
    const bool same = oracle::slurp(dir.path() / "first.csv") == oracle::slurp(dir.path() / "second.csv") &&
                      oracle::slurp(dir.path() / "first_summary.csv") ==
                          oracle::slurp(dir.path() / "second_summary.csv");
    return Outcome{same, std::string("two identical multi-threaded invocations, results and summary CSVs byte-identical: ") +
                             (same ? "yes" : "no")};
  });

  std::printf("%d criterion(s) failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
