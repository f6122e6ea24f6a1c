#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "error_check.hpp"
#include "mixsemble/datagen.hpp"
#include "mixsemble/harness.hpp"
#include "mixsemble/io.hpp"
#include "mixsemble/metrics.hpp"
#include "oracles.hpp"

using namespace mixsemble;

namespace {

ExperimentConfig preset_config(const std::string& preset, std::vector<std::string> members,
                               int n_runs) {
  ExperimentConfig c;
  DatasetSpec d;
  d.name = preset;
  d.preset = preset;
  c.datasets = {d};
  c.members.clear();
  for (const auto& m : members) c.members.push_back(MemberSpec::parse(m));
  c.n_runs = n_runs;
  return c;
}

std::map<std::string, std::vector<double>> by_method(const ExperimentReport& r) {
  std::map<std::string, std::vector<double>> out;
  for (const auto& rec : r.records) out[rec.method].push_back(rec.ari);
  return out;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("record cardinality and per-run envelope") {
    const auto r = run_experiment(preset_config("x2-like", {"kmeans", "gmm-diagonal", "gmm-full"}, 2));
    CHECK(r.records.size() == 2 * (3 + 4));
    CHECK(r.member_names == std::vector<std::string>{"kmeans", "gmm-diagonal", "gmm-full"});
    for (int run = 0; run < 2; ++run) {
      std::map<std::string, double> ari;
      for (const auto& rec : r.records) {
        if (rec.run == run) {
          ari[rec.method] = rec.ari;
          CHECK(rec.seed == 1 + static_cast<std::uint64_t>(run));
        }
      }
      CHECK(ari["min"] <= ari["max"]);
      for (const auto& m : r.member_names) {
        CHECK(ari[m] >= ari["min"]);
        CHECK(ari[m] <= ari["max"]);
      }
    }
  }

  TEST_CASE("duplicated member makes every summary equal that member") {
    oracle::TempDir dir;
    const auto data = simulate_preset("manly-like", 0);
    const auto member = kmeans(data, 3, 4).partition;
    std::string text = "a,b,c\n";
    for (int v : member.labels()) {
      text += std::to_string(v) + "," + std::to_string(v) + "," + std::to_string(v) + "\n";
    }
    ExperimentConfig c = preset_config("manly-like", {"kmeans", "gmm-full"}, 3);
    c.datasets[0].partitions_path = dir.write("dup.csv", text);
    const auto r = run_experiment(c);
    const double expected = adjusted_rand_index(*data.truth, member);
    for (const auto& rec : r.records) CHECK(rec.ari == expected);
    CHECK(r.records.size() == 3 * (3 + 4));
  }

  TEST_CASE("easy regime: every method scores high with a narrow envelope") {
    const auto r =
        run_experiment(preset_config("x2-like", {"kmeans", "gmm-diagonal", "gmm-full"}, 10));
    for (const auto& s : r.summaries) CHECK(s.mean >= 0.95);
    const auto m = by_method(r);
    for (std::size_t run = 0; run < 10; ++run) CHECK(m.at("max")[run] - m.at("min")[run] <= 0.05);
  }

  TEST_CASE("worker count does not change results") {
    auto c = preset_config("elongated-like", {"kmeans", "gmm-spherical", "gmm-full"}, 6);
    const auto serial = run_experiment(c);
    c.jobs = 4;
    const auto parallel = run_experiment(c);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
      CHECK(serial.records[i].method == parallel.records[i].method);
      CHECK(serial.records[i].ari == parallel.records[i].ari);
    }
    oracle::TempDir dir;
    write_results_csv(serial, dir.path() / "a.csv");
    write_results_csv(parallel, dir.path() / "b.csv");
    CHECK(oracle::slurp(dir.path() / "a.csv") == oracle::slurp(dir.path() / "b.csv"));
    CHECK(oracle::slurp(dir.path() / "a_summary.csv") == oracle::slurp(dir.path() / "b_summary.csv"));
  }

  TEST_CASE("summary tables render mean(sd) and mark the best") {
    ExperimentReport r;
    r.member_names = {"m1", "m2"};
    r.records = {{"d", "m1", 0, 1, 0.5}, {"d", "m1", 1, 2, 0.5},
                 {"d", "m2", 0, 1, 0.4}, {"d", "m2", 1, 2, 0.6},
                 {"d", "vote", 0, 1, 0.3}, {"d", "vote", 1, 2, 0.3},
                 {"d", "mixsemble", 0, 1, 0.5}, {"d", "mixsemble", 1, 2, 0.5},
                 {"d", "min", 0, 1, 0.4}, {"d", "min", 1, 2, 0.5},
                 {"d", "max", 0, 1, 0.5}, {"d", "max", 1, 2, 0.6}};
    r.finalize();
    const auto text = summarize(r);
    CHECK(text.find("0.5000(0.0000)*") != std::string::npos);
    CHECK(text.find("0.5000(0.1414)*") != std::string::npos);
    CHECK(text.find("0.3000(0.0000)") != std::string::npos);
    CHECK(text.find("0.3000(0.0000)*") == std::string::npos);
    CHECK_ERROR_CODE(summarize(ExperimentReport{}), ErrorCode::EmptyReport);
  }

  TEST_CASE("config parsing, defaults and path resolution") {
    const auto c = parse_experiment_config(
        R"({"datasets": [{"preset": "x2-like"}, {"csv": "data/iris.csv", "label_column": "species", "g": 3}],
            "n_runs": 5, "consensus_em": {"smoothing": 0.1}, "output_dir": "out"})",
        "/base");
    REQUIRE(c.datasets.size() == 2);
    CHECK(c.datasets[0].name == "x2-like");
    CHECK(c.datasets[1].name == "iris");
    CHECK(*c.datasets[1].csv_path == std::filesystem::path("/base/data/iris.csv"));
    CHECK(*c.output_dir == std::filesystem::path("/base/out"));
    CHECK(c.members.size() == 4);
    CHECK(c.n_runs == 5);
    CHECK(c.base_seed == 1);
    CHECK(c.consensus_em.smoothing == 0.1);
    CHECK(c.consensus_em.max_iterations == 1000);
  }

  TEST_CASE("config errors") {
    CHECK_ERROR_CODE(parse_experiment_config("{"), ErrorCode::ParseError);
    CHECK_ERROR_CODE(parse_experiment_config(R"({"datasets": [], "colour": 1})"),
                     ErrorCode::InvalidConfig);
    CHECK_ERROR_CODE(parse_experiment_config(R"({"datasets": []})"), ErrorCode::InvalidConfig);
    CHECK_ERROR_CODE(parse_experiment_config(R"({"datasets": [{"preset": "x2-like"}], "n_runs": 0})"),
                     ErrorCode::InvalidConfig);
    CHECK_ERROR_CODE(
        parse_experiment_config(R"({"datasets": [{"preset": "x2-like"}], "members": ["kmeans", "dbscan"]})"),
        ErrorCode::InvalidConfig);
    CHECK_ERROR_CODE(
        parse_experiment_config(R"({"datasets": [{"preset": "x2-like"}], "members": ["kmeans"]})"),
        ErrorCode::InvalidConfig);
    CHECK_ERROR_CODE(
        parse_experiment_config(R"({"datasets": [{"preset": "x2-like"}], "members": ["kmeans", "kmeans"]})"),
        ErrorCode::InvalidConfig);
    CHECK_ERROR_CODE(
        parse_experiment_config(R"({"datasets": [{"preset": "x2-like", "csv": "a.csv"}]})"),
        ErrorCode::InvalidConfig);
    CHECK_ERROR_CODE(parse_experiment_config(R"({"datasets": [{"preset": "x2-like"}], "n_runs": "ten"})"),
                     ErrorCode::InvalidConfig);
    CHECK_ERROR_CODE(load_experiment_config("/nonexistent/config.json"), ErrorCode::IoError);
  }

  TEST_CASE("run failures name the dataset and run") {
    oracle::TempDir dir;
    ExperimentConfig c = preset_config("x2-like", {"kmeans", "gmm-full"}, 1);
    c.datasets[0].preset.reset();
    c.datasets[0].name = "tiny";
    c.datasets[0].csv_path = dir.write("tiny.csv", "x,label\n0,a\n1,b\n");
    c.datasets[0].label_column = "label";
    c.datasets[0].n_clusters = 3;
    try {
      run_experiment(c);
      FAIL("expected TooFewPoints");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooFewPoints);
      CHECK(std::string(e.what()).find("dataset 'tiny' run 0") != std::string::npos);
    }
  }

  TEST_CASE("external partitions are validated against the dataset") {
    oracle::TempDir dir;
    ExperimentConfig c = preset_config("x2-like", {"kmeans", "gmm-full"}, 1);
    c.datasets[0].partitions_path = dir.write("short.csv", "a,b\n0,1\n1,0\n");
    CHECK_ERROR_CODE(run_experiment(c), ErrorCode::LengthMismatch);
    std::string reserved = "vote,b\n";
    for (int i = 0; i < 300; ++i) reserved += std::to_string(i % 3) + "," + std::to_string(i % 2) + "\n";
    c.datasets[0].partitions_path = dir.write("reserved.csv", reserved);
    CHECK_ERROR_CODE(run_experiment(c), ErrorCode::InvalidConfig);
  }

  TEST_CASE("one-shot fusion") {
    const auto m = validate_label_matrix({{0, 1, 1}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}}, 2);
    CHECK(fuse(m, FusionMethod::Vote).labels() == std::vector<int>{0, 0, 1, 1});
    CHECK(equal_up_to_relabeling(fuse(m, FusionMethod::DawidSkene), Partition({0, 0, 1, 1}, 2)));
  }
}
