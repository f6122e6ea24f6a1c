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

#include "mixsemble/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mixsemble/alignment.hpp"
#include "mixsemble/datagen.hpp"
#include "mixsemble/io.hpp"
#include "mixsemble/metrics.hpp"
#include "mixsemble/vote.hpp"

namespace mixsemble {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kReservedMethods = {kVoteMethod, kConsensusMethod, kMinMethod,
                                                kMaxMethod};

[[noreturn]] void bad_config(const std::string& message) {
  throw Error(ErrorCode::InvalidConfig, message);
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      bad_config("unknown key '" + key + "' in " + where);
    }
  }
}

EmConfig parse_em(const json& j, EmConfig config, const std::string& where) {
  if (!j.is_object()) bad_config(where + " must be an object");
  reject_unknown_keys(j, {"max_iterations", "rel_tolerance", "smoothing"}, where);
  config.max_iterations = j.value("max_iterations", config.max_iterations);
  config.rel_tolerance = j.value("rel_tolerance", config.rel_tolerance);
  config.smoothing = j.value("smoothing", config.smoothing);
  return config;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

struct LoadedDataset {
  std::string name;
  Dataset data;
  Partition truth;
  int n_clusters;
  std::optional<PartitionTable> external;
};

LoadedDataset load(const DatasetSpec& spec) {
  Dataset data;
  if (spec.preset) {
    data = simulate_preset(*spec.preset, spec.data_seed);
  } else {
    data = load_dataset_csv(*spec.csv_path, spec.label_column);
  }
  if (!data.truth) {
    bad_config("dataset '" + spec.name + "' has no ground truth to score against");
  }
  Partition truth = *data.truth;
  const int g = spec.n_clusters.value_or(truth.n_clusters());
  if (g < truth.n_clusters()) {
    bad_config("dataset '" + spec.name + "' has more true classes than G=" + std::to_string(g));
  }
  std::optional<PartitionTable> external;
  if (spec.partitions_path) {
    PartitionTable table = load_partition_table(*spec.partitions_path);
    if (table.matrix.n_items() != data.n_items()) {
      throw Error(ErrorCode::LengthMismatch, "partition file for '" + spec.name + "' has " +
                                                 std::to_string(table.matrix.n_items()) +
                                                 " rows, dataset has " +
                                                 std::to_string(data.n_items()));
    }
    if (table.matrix.n_clusters() > g) {
      throw Error(ErrorCode::ClusterCountMismatch,
                  "partition file for '" + spec.name + "' uses more than G=" + std::to_string(g) +
                      " labels in some column");
    }
    // Members that use fewer labels simply leave the rest unused.
    table.matrix = LabelMatrix(table.matrix.entries(), table.matrix.n_items(),
                               table.matrix.n_observers(), g);
    for (const auto& name : table.names) {
      if (kReservedMethods.count(name)) bad_config("member name '" + name + "' is reserved");
    }
    external = std::move(table);
  }
  return {spec.name, std::move(data), std::move(truth), g, std::move(external)};
}

std::vector<RunRecord> run_once(const ExperimentConfig& config, const LoadedDataset& ds, int run) {
  const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(run);
  std::vector<std::string> names;
  std::vector<Partition> members;
  if (ds.external) {
    names = ds.external->names;
    for (std::size_t k = 0; k < ds.external->matrix.n_observers(); ++k) {
      members.push_back(ds.external->matrix.column(k));
    }
  } else {
    // One k-means start per run, shared by every member.
    const FitResult init = kmeans(ds.data, ds.n_clusters, seed, config.kmeans_max_iter);
    for (const auto& member : config.members) {
      names.push_back(member.name);
      if (member.kind == MemberSpec::Kind::KMeans) {
        members.push_back(init.partition);
      } else {
        members.push_back(
            gmm_fit(ds.data, ds.n_clusters, member.family, init.partition, config.gmm_em).partition);
      }
    }
  }

  const LabelMatrix matrix = LabelMatrix::from_columns(members);
  const Partition vote = majority_vote(align_ensemble(matrix, config.reference_column));
  const Partition consensus = hard_labels(fit(matrix, config.consensus_em));

  std::vector<RunRecord> records;
  double lo = 1.0, hi = -1.0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const double ari = adjusted_rand_index(ds.truth, members[k]);
    lo = std::min(lo, ari);
    hi = std::max(hi, ari);
    records.push_back({ds.name, names[k], run, seed, ari});
  }
  records.push_back({ds.name, kVoteMethod, run, seed, adjusted_rand_index(ds.truth, vote)});
  records.push_back({ds.name, kConsensusMethod, run, seed, adjusted_rand_index(ds.truth, consensus)});
  records.push_back({ds.name, kMinMethod, run, seed, lo});
  records.push_back({ds.name, kMaxMethod, run, seed, hi});
  return records;
}

std::string cell(const std::map<std::pair<std::string, std::string>, const MethodSummary*>& index,
                 const std::string& dataset, const std::string& method, bool best) {
  const auto it = index.find({dataset, method});
  if (it == index.end()) return "-";
  return format_fixed4(it->second->mean) + "(" + format_fixed4(it->second->sd) + ")" +
         (best ? "*" : "");
}

void render_table(std::ostringstream& out, const std::string& title,
                  const std::vector<std::string>& datasets, const std::vector<std::string>& methods,
                  const std::vector<std::string>& contenders,
                  const std::map<std::pair<std::string, std::string>, const MethodSummary*>& index) {
  std::size_t name_width = 7;
  for (const auto& d : datasets) name_width = std::max(name_width, d.size());
  std::vector<std::size_t> widths;
  for (const auto& m : methods) widths.push_back(std::max<std::size_t>(m.size(), 15));

  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  out << title << '\n';
  std::string header = pad("dataset", name_width);
  for (std::size_t j = 0; j < methods.size(); ++j) header += "  " + pad(methods[j], widths[j]);
  while (!header.empty() && header.back() == ' ') header.pop_back();
  out << header << '\n';

  for (const auto& d : datasets) {
    // Best among contenders by the rendered mean, so ties at 4 decimals share the mark.
    std::string best_mean;
    for (const auto& m : contenders) {
      const auto it = index.find({d, m});
      if (it == index.end()) continue;
      const std::string rendered = format_fixed4(it->second->mean);
      if (best_mean.empty() || std::stod(rendered) > std::stod(best_mean)) best_mean = rendered;
    }
    std::string line = pad(d, name_width);
    for (std::size_t j = 0; j < methods.size(); ++j) {
      const auto it = index.find({d, methods[j]});
      const bool contender =
          std::find(contenders.begin(), contenders.end(), methods[j]) != contenders.end();
      const bool best = contender && it != index.end() &&
                        format_fixed4(it->second->mean) == best_mean;
      line += "  " + pad(cell(index, d, methods[j], best), widths[j]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

}  // namespace

MemberSpec MemberSpec::parse(const std::string& name) {
  MemberSpec spec;
  spec.name = name;
  if (name == "kmeans") {
    spec.kind = Kind::KMeans;
  } else if (name.rfind("gmm-", 0) == 0) {
    spec.kind = Kind::Gmm;
    spec.family = parse_covariance_family(name.substr(4));
  } else {
    bad_config("unknown member '" + name + "'");
  }
  return spec;
}

std::vector<MemberSpec> default_members() {
  return {MemberSpec::parse("kmeans"), MemberSpec::parse("gmm-spherical"),
          MemberSpec::parse("gmm-diagonal"), MemberSpec::parse("gmm-full")};
}

void ExperimentConfig::validate() const {
  if (datasets.empty()) bad_config("no datasets");
  if (n_runs < 1) bad_config("n_runs must be >= 1");
  if (jobs < 1) bad_config("jobs must be >= 1");
  if (kmeans_max_iter < 1) bad_config("kmeans_max_iter must be >= 1");
  consensus_em.validate();
  gmm_em.validate();
  std::set<std::string> seen;
  for (const auto& d : datasets) {
    if (d.name.empty()) bad_config("dataset without a name");
    if (!seen.insert(d.name).second) bad_config("duplicate dataset name '" + d.name + "'");
    if (d.preset.has_value() == d.csv_path.has_value()) {
      bad_config("dataset '" + d.name + "' needs exactly one of preset or csv");
    }
    if (d.n_clusters && *d.n_clusters < 1) bad_config("dataset '" + d.name + "' has G < 1");
    if (!d.partitions_path && members.size() < 2) {
      bad_config("ensembles need at least 2 members");
    }
  }
  std::set<std::string> member_names;
  for (const auto& m : members) {
    if (!member_names.insert(m.name).second) bad_config("duplicate member '" + m.name + "'");
  }
  if (!members.empty() && reference_column >= members.size()) {
    bad_config("reference_column out of range");
  }
}

ExperimentConfig parse_experiment_config(const std::string& json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) bad_config("config must be a JSON object");
  reject_unknown_keys(root,
                      {"datasets", "members", "n_runs", "base_seed", "consensus_em", "gmm_em",
                       "kmeans_max_iter", "reference_column", "output_dir", "jobs"},
                      "config");
  ExperimentConfig config;
  try {
    if (!root.contains("datasets") || !root["datasets"].is_array()) bad_config("datasets must be an array");
    for (const auto& d : root["datasets"]) {
      if (!d.is_object()) bad_config("dataset entries must be objects");
      reject_unknown_keys(d, {"name", "preset", "csv", "label_column", "partitions", "g", "data_seed"},
                          "dataset");
      DatasetSpec spec;
      if (d.contains("preset")) spec.preset = d["preset"].get<std::string>();
      if (d.contains("csv")) spec.csv_path = resolve(base_dir, d["csv"].get<std::string>());
      if (d.contains("label_column")) spec.label_column = d["label_column"].get<std::string>();
      if (d.contains("partitions")) {
        spec.partitions_path = resolve(base_dir, d["partitions"].get<std::string>());
      }
      if (d.contains("g")) spec.n_clusters = d["g"].get<int>();
      spec.data_seed = d.value("data_seed", std::uint64_t{0});
      spec.name = d.value("name", spec.preset ? *spec.preset
                                  : spec.csv_path ? spec.csv_path->stem().string()
                                                  : std::string());
      config.datasets.push_back(std::move(spec));
    }
    if (root.contains("members")) {
      config.members.clear();
      for (const auto& m : root["members"]) config.members.push_back(MemberSpec::parse(m.get<std::string>()));
    }
    config.n_runs = root.value("n_runs", config.n_runs);
    config.base_seed = root.value("base_seed", config.base_seed);
    if (root.contains("consensus_em")) {
      config.consensus_em = parse_em(root["consensus_em"], config.consensus_em, "consensus_em");
    }
    if (root.contains("gmm_em")) config.gmm_em = parse_em(root["gmm_em"], config.gmm_em, "gmm_em");
    config.kmeans_max_iter = root.value("kmeans_max_iter", config.kmeans_max_iter);
    config.reference_column = root.value("reference_column", config.reference_column);
    if (root.contains("output_dir")) {
      config.output_dir = resolve(base_dir, root["output_dir"].get<std::string>());
    }
    config.jobs = root.value("jobs", config.jobs);
  } catch (const json::exception& e) {
    bad_config(std::string("config has a value of the wrong type: ") + e.what());
  }
  config.validate();
  return config;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str(), path.parent_path());
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<LoadedDataset> loaded;
  for (const auto& spec : config.datasets) loaded.push_back(load(spec));

  struct Task {
    std::size_t dataset;
    int run;
  };
  std::vector<Task> tasks;
  for (std::size_t d = 0; d < loaded.size(); ++d) {
    for (int r = 0; r < config.n_runs; ++r) tasks.push_back({d, r});
  }
  std::vector<std::vector<RunRecord>> results(tasks.size());
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const auto& task = tasks[t];
      try {
        results[t] = run_once(config, loaded[task.dataset], task.run);
      } catch (...) {
        failures[t] = std::current_exception();
      }
    }
  };
  const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), tasks.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  ExperimentReport report;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (!failures[t]) continue;
    const std::string where = "dataset '" + loaded[tasks[t].dataset].name + "' run " +
                              std::to_string(tasks[t].run) + ": ";
    try {
      std::rethrow_exception(failures[t]);
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
  }
  for (const auto& ds : loaded) {
    const auto names = ds.external ? ds.external->names : [&] {
      std::vector<std::string> n;
      for (const auto& m : config.members) n.push_back(m.name);
      return n;
    }();
    for (const auto& n : names) {
      if (std::find(report.member_names.begin(), report.member_names.end(), n) ==
          report.member_names.end()) {
        report.member_names.push_back(n);
      }
    }
  }
  for (auto& r : results) {
    report.records.insert(report.records.end(), std::make_move_iterator(r.begin()),
                          std::make_move_iterator(r.end()));
  }
  report.finalize();
  return report;
}

std::string summarize(const ExperimentReport& report) {
  if (report.records.empty() || report.summaries.empty()) {
    throw Error(ErrorCode::EmptyReport, "nothing to summarize");
  }
  std::map<std::pair<std::string, std::string>, const MethodSummary*> index;
  std::vector<std::string> datasets;
  for (const auto& s : report.summaries) {
    index[{s.dataset, s.method}] = &s;
    if (std::find(datasets.begin(), datasets.end(), s.dataset) == datasets.end()) {
      datasets.push_back(s.dataset);
    }
  }
  std::vector<std::string> members = report.member_names;
  if (members.empty()) {
    for (const auto& s : report.summaries) {
      if (!kReservedMethods.count(s.method) &&
          std::find(members.begin(), members.end(), s.method) == members.end()) {
        members.push_back(s.method);
      }
    }
  }
  std::ostringstream out;
  if (!members.empty()) {
    render_table(out, "Mean ARI (sd) per member; * marks the best member", datasets, members,
                 members, index);
  }
  const bool has_ensemble = std::any_of(report.summaries.begin(), report.summaries.end(),
                                        [](const MethodSummary& s) { return s.method == kVoteMethod || s.method == kConsensusMethod; });
  if (has_ensemble) {
    if (!members.empty()) out << '\n';
    render_table(out,
                 "Mean ARI (sd) of the per-run min/max over members and of the ensembles; "
                 "* marks the better ensemble",
                 datasets, {kMinMethod, kMaxMethod, kVoteMethod, kConsensusMethod},
                 {kVoteMethod, kConsensusMethod}, index);
  }
  return out.str();
}

Partition fuse(const LabelMatrix& matrix, FusionMethod method, const EmConfig& em,
               std::size_t reference_column) {
  if (method == FusionMethod::Vote) return majority_vote(align_ensemble(matrix, reference_column));
  return hard_labels(fit(matrix, em));
}

}  // namespace mixsemble
