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

// mixsemble command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "mixsemble/mixsemble.h"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

bool g_quiet = false;

int report_failure(msb_status status) {
  std::cerr << "mixsemble: " << msb_last_error() << '\n';
  return msb_status_is_validation(status) ? kExitValidation : kExitRuntime;
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using PartitionPtr = std::unique_ptr<msb_partition, Deleter<msb_partition, msb_partition_destroy>>;
using MatrixPtr = std::unique_ptr<msb_label_matrix, Deleter<msb_label_matrix, msb_label_matrix_destroy>>;
using DatasetPtr = std::unique_ptr<msb_dataset, Deleter<msb_dataset, msb_dataset_destroy>>;
using ReportPtr = std::unique_ptr<msb_report, Deleter<msb_report, msb_report_destroy>>;

int cmd_run(const std::string& config, int jobs, const std::string& out_override) {
  msb_report* raw = nullptr;
  if (auto s = msb_run_experiment_file(config.c_str(), jobs, &raw); s != MSB_OK) {
    return report_failure(s);
  }
  ReportPtr report(raw);
  std::filesystem::path out;
  if (!out_override.empty()) {
    out = out_override;
  } else {
    const char* dir = msb_report_output_dir(report.get());
    out = std::filesystem::path(dir ? dir : "results") / "results.csv";
  }
  if (auto s = msb_report_write_csv(report.get(), out.string().c_str()); s != MSB_OK) {
    return report_failure(s);
  }
  if (!g_quiet) {
    char* text = nullptr;
    if (auto s = msb_report_summarize(report.get(), &text); s != MSB_OK) return report_failure(s);
    std::cout << text << "\nwrote " << out.string() << '\n';
    msb_string_free(text);
  }
  return 0;
}

int cmd_consensus(const std::string& partitions, const std::string& method, int g,
                  const std::string& out, const msb_em_config& em) {
  msb_label_matrix* raw = nullptr;
  if (auto s = msb_label_matrix_load_csv(partitions.c_str(), g, &raw); s != MSB_OK) {
    return report_failure(s);
  }
  MatrixPtr matrix(raw);
  const auto fusion = method == "vote" ? MSB_FUSION_VOTE : MSB_FUSION_DAWID_SKENE;
  msb_partition* fused = nullptr;
  if (auto s = msb_fuse(matrix.get(), fusion, &em, &fused); s != MSB_OK) return report_failure(s);
  PartitionPtr result(fused);
  const char* column = fusion == MSB_FUSION_VOTE ? "vote" : "mixsemble";
  if (auto s = msb_partition_write_csv(result.get(), column, out.c_str()); s != MSB_OK) {
    return report_failure(s);
  }
  if (!g_quiet) {
    std::cout << "fused " << msb_label_matrix_n_observers(matrix.get()) << " partitions of "
              << msb_label_matrix_n_items(matrix.get()) << " items into " << out << '\n';
  }
  return 0;
}

int cmd_simulate(const std::string& preset, std::uint64_t seed, const std::string& out) {
  msb_dataset* raw = nullptr;
  if (auto s = msb_simulate_preset(preset.c_str(), seed, &raw); s != MSB_OK) return report_failure(s);
  DatasetPtr data(raw);
  if (auto s = msb_dataset_write_csv(data.get(), out.c_str()); s != MSB_OK) return report_failure(s);
  if (!g_quiet) {
    std::cout << "wrote " << msb_dataset_n_items(data.get()) << " rows x "
              << msb_dataset_n_features(data.get()) << " features to " << out << '\n';
  }
  return 0;
}

int cmd_ari(const std::string& a_path, std::size_t a_col, const std::string& b_path, std::size_t b_col) {
  msb_partition* a_raw = nullptr;
  if (auto s = msb_partition_load_csv(a_path.c_str(), a_col, &a_raw); s != MSB_OK) {
    return report_failure(s);
  }
  PartitionPtr a(a_raw);
  msb_partition* b_raw = nullptr;
  if (auto s = msb_partition_load_csv(b_path.c_str(), b_col, &b_raw); s != MSB_OK) {
    return report_failure(s);
  }
  PartitionPtr b(b_raw);
  double ari = 0.0;
  if (auto s = msb_adjusted_rand_index(a.get(), b.get(), &ari); s != MSB_OK) return report_failure(s);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10f", ari);
  std::cout << buf << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixsemble: consensus clustering with Dawid-Skene fusion"};
  app.require_subcommand(1);
  int jobs = 0;
  app.add_option("--jobs", jobs, "Worker threads for experiment runs")->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", g_quiet, "Suppress informational output");

  std::string config, run_out;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Results CSV path (default <output_dir>/results.csv)");
  run->fallthrough();

  std::string partitions, method = "ds", consensus_out;
  int g = 0;
  msb_em_config em = msb_em_config_default();
  auto* consensus = app.add_subcommand("consensus", "Fuse an external partition matrix");
  consensus->add_option("--partitions", partitions, "Partition CSV, one column per member")
      ->required();
  consensus->add_option("--method", method, "ds (Dawid-Skene) or vote")
      ->check(CLI::IsMember({"ds", "vote"}));
  consensus->add_option("--g", g, "Number of clusters; labels must then lie in [0, G)")
      ->check(CLI::PositiveNumber);
  consensus->add_option("--out", consensus_out, "Output CSV")->required();
  consensus->add_option("--max-iter", em.max_iterations, "EM iteration cap");
  consensus->add_option("--tol", em.rel_tolerance, "Relative log-likelihood tolerance");
  consensus->add_option("--smoothing", em.smoothing, "Error-rate pseudocount");
  consensus->fallthrough();

  std::string preset, sim_out;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Write a synthetic preset dataset");
  simulate->add_option("--preset", preset, "x2-like, manly-like or elongated-like")->required();
  simulate->add_option("--seed", seed, "Random seed")->required();
  simulate->add_option("--out", sim_out, "Output CSV")->required();
  simulate->fallthrough();

  std::string a_path, b_path;
  std::size_t a_col = 0, b_col = 0;
  auto* ari = app.add_subcommand("ari", "Adjusted Rand index between two partition files");
  ari->add_option("--a", a_path, "First partition CSV")->required();
  ari->add_option("--b", b_path, "Second partition CSV")->required();
  ari->add_option("--a-column", a_col, "Column index in the first file");
  ari->add_option("--b-column", b_col, "Column index in the second file");
  ari->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (run->parsed()) return cmd_run(config, jobs, run_out);
  if (consensus->parsed()) return cmd_consensus(partitions, method, g, consensus_out, em);
  if (simulate->parsed()) return cmd_simulate(preset, seed, sim_out);
  if (ari->parsed()) return cmd_ari(a_path, a_col, b_path, b_col);
  return kExitValidation;
}
