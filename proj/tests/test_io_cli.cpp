/*
 * Copyright 2026 The ParityForge Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "parityforge/cli.hpp"
#include "parityforge/io.hpp"
#include "parityforge/metrics.hpp"

using namespace parityforge;
namespace fs = std::filesystem;

namespace {

// Scratch directory per test case.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("parityforge_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("parityforge");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("format_double survives a parse round trip") {
  Rng rng(151);
  for (int i = 0; i < 200; ++i) {
    const double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform_int(8));
    const std::string text = io::format_double(v);
    CHECK(std::stod(text) == v);
  }
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("CSV writers and readers round-trip bit-identically") {
  TempDir dir;
  Rng rng(157);

  Matrix features(7, 3);
  for (std::size_t i = 0; i < features.size(); ++i) {
    features.data()[i] = rng.normal();
  }
  io::write_features_csv(dir.file("features.csv"), features);
  const Matrix parsed = io::read_features_csv(dir.file("features.csv"));
  CHECK(parsed == features);
  io::write_features_csv(dir.file("features2.csv"), parsed);
  CHECK(slurp(dir.file("features.csv")) == slurp(dir.file("features2.csv")));

  const LabelMatrix labels(testing::random_label_rows(rng, 7, 4));
  io::write_labels_csv(dir.file("labels.csv"), labels);
  const LabelMatrix parsed_labels = io::read_labels_csv(dir.file("labels.csv"));
  io::write_labels_csv(dir.file("labels2.csv"), parsed_labels);
  CHECK(slurp(dir.file("labels.csv")) == slurp(dir.file("labels2.csv")));

  const GroupVector groups = testing::random_groups(rng, 7, 3);
  io::write_groups_csv(dir.file("groups.csv"), groups);
  CHECK(io::read_groups_csv(dir.file("groups.csv")) == groups);
}

TEST_CASE("hard-label CSV is auto-detected and one-hot expanded") {
  TempDir dir;
  {
    std::ofstream out(dir.file("labels.csv"), std::ios::binary);
    out << "y\n2\n0\n1\n2\n";
  }
  const LabelMatrix labels = io::read_labels_csv(dir.file("labels.csv"));
  CHECK(labels.n_classes() == 3);
  CHECK(labels(0, 2) == 1.0);
  CHECK(labels(1, 0) == 1.0);
  CHECK(labels(2, 1) == 1.0);
}

TEST_CASE("CSV parse failures throw ParseError") {
  TempDir dir;
  {
    std::ofstream out(dir.file("bad.csv"), std::ios::binary);
    out << "f0,f1\n1.0,nope\n";
  }
  CHECK_THROWS_AS(io::read_features_csv(dir.file("bad.csv")), io::ParseError);
  {
    std::ofstream out(dir.file("badheader.csv"), std::ios::binary);
    out << "a,b\n1.0,2.0\n";
  }
  CHECK_THROWS_AS(io::read_features_csv(dir.file("badheader.csv")),
                  io::ParseError);
  CHECK_THROWS_AS(io::read_features_csv(dir.file("missing.csv")),
                  io::IoError);
}

TEST_CASE("cli synth is deterministic and reports label DP") {
  TempDir dir;
  CHECK(run_cli({"synth", "--classes", "4", "--features", "10", "--per-class",
                 "100", "--seed", "1", "--out", dir.path.string()}) == 0);
  const Matrix features = io::read_features_csv(dir.file("features.csv"));
  CHECK(features.rows() == 400);
  CHECK(features.cols() == 10);
  const LabelMatrix labels = io::read_labels_csv(dir.file("labels.csv"));
  CHECK(labels.n_examples() == 400);

  TempDir dir2;
  CHECK(run_cli({"synth", "--classes", "4", "--features", "10", "--per-class",
                 "100", "--seed", "1", "--out", dir2.path.string()}) == 0);
  CHECK(slurp(dir.file("features.csv")) == slurp(dir2.file("features.csv")));
  CHECK(slurp(dir.file("labels.csv")) == slurp(dir2.file("labels.csv")));
  CHECK(slurp(dir.file("groups.csv")) == slurp(dir2.file("groups.csv")));

  // --inject-bias 0 leaves the labels identical to the no-flag run.
  TempDir dir3;
  TempDir dir4;
  CHECK(run_cli({"synth", "--classes", "6", "--features", "10", "--per-class",
                 "100", "--seed", "1", "--out", dir3.path.string()}) == 0);
  CHECK(run_cli({"synth", "--classes", "6", "--features", "10", "--per-class",
                 "100", "--seed", "1", "--inject-bias", "0", "--out",
                 dir4.path.string()}) == 0);
  CHECK(slurp(dir3.file("labels.csv")) == slurp(dir4.file("labels.csv")));
}

TEST_CASE("cli debias writes output labels and a report") {
  TempDir dir;
  // The worked three-example instance.
  {
    std::ofstream labels(dir.file("labels.csv"), std::ios::binary);
    labels << "c0,c1,c2\n0.5,0.5,0\n1,0,0\n0,0,1\n";
    std::ofstream groups(dir.file("groups.csv"), std::ios::binary);
    groups << "g\n0\n1\n0\n";
  }
  CHECK(run_cli({"debias", "--labels", dir.file("labels.csv"), "--groups",
                 dir.file("groups.csv"), "--method", "r2b", "--epsilon", "0",
                 "--max-rounds", "500", "--residual-tol", "1e-10", "--out",
                 dir.file("out.csv"), "--report", dir.file("report.json")}) ==
        0);

  const LabelMatrix debiased = io::read_labels_csv(dir.file("out.csv"));
  const GroupVector groups = io::read_groups_csv(dir.file("groups.csv"));
  CHECK(metrics::multiclass_dp(debiased, groups) <= 1e-4);

  const auto report = nlohmann::json::parse(slurp(dir.file("report.json")));
  CHECK(report["version"] == 1);
  CHECK(report["config"]["epsilon"] == 0.0);
  CHECK(report["config"]["tau"] == 0.5);
  CHECK(report["rounds_run"] == report["dp_trace"].size());
  CHECK(report["final_dp"].get<double>() <= 1e-4);
  CHECK(report["max_clamp_adjustment"].get<double>() >= 0.0);
  CHECK(report["timings_ms"].get<double>() > 0.0);

  // The multi-label route reintroduces bias on this instance.
  CHECK(run_cli({"debias", "--labels", dir.file("labels.csv"), "--groups",
                 dir.file("groups.csv"), "--method", "ml", "--epsilon", "0",
                 "--out", dir.file("out_ml.csv"), "--report",
                 dir.file("report_ml.json")}) == 0);
  const auto ml_report =
      nlohmann::json::parse(slurp(dir.file("report_ml.json")));
  CHECK(ml_report["final_dp"].get<double>() > 0.005);
}

TEST_CASE("cli debias on a feasible input is idempotent") {
  TempDir dir;
  {
    std::ofstream labels(dir.file("labels.csv"), std::ios::binary);
    labels << "c0,c1\n1,0\n0,1\n1,0\n0,1\n";
    std::ofstream groups(dir.file("groups.csv"), std::ios::binary);
    groups << "g\n0\n0\n1\n1\n";
  }
  CHECK(run_cli({"debias", "--labels", dir.file("labels.csv"), "--groups",
                 dir.file("groups.csv"), "--method", "r2b", "--epsilon", "0",
                 "--max-rounds", "4000", "--residual-tol", "1e-12", "--out",
                 dir.file("out.csv")}) == 0);
  const LabelMatrix in = io::read_labels_csv(dir.file("labels.csv"));
  const LabelMatrix out = io::read_labels_csv(dir.file("out.csv"));
  for (std::size_t i = 0; i < in.n_examples(); ++i) {
    for (std::size_t k = 0; k < in.n_classes(); ++k) {
      CHECK(std::abs(in(i, k) - out(i, k)) <= 1e-6);
    }
  }
}

TEST_CASE("cli exit codes are stable") {
  TempDir dir;
  // Unknown flag: parse error.
  CHECK(run_cli({"debias", "--nonsense"}) == cli::kExitParse);
  // Unreadable input: i/o error.
  CHECK(run_cli({"debias", "--labels", dir.file("none.csv"), "--groups",
                 dir.file("none.csv"), "--out", dir.file("out.csv")}) ==
        cli::kExitIo);
  // Unparsable labels: parse error.
  {
    std::ofstream labels(dir.file("bad.csv"), std::ios::binary);
    labels << "c0,c1\nx,y\n";
    std::ofstream groups(dir.file("groups.csv"), std::ios::binary);
    groups << "g\n0\n";
  }
  CHECK(run_cli({"debias", "--labels", dir.file("bad.csv"), "--groups",
                 dir.file("groups.csv"), "--out", dir.file("out.csv")}) ==
        cli::kExitParse);
  // Validation failure: a single group.
  {
    std::ofstream labels(dir.file("labels.csv"), std::ios::binary);
    labels << "c0,c1\n1,0\n";
    std::ofstream groups(dir.file("one_group.csv"), std::ios::binary);
    groups << "g\n0\n";
  }
  CHECK(run_cli({"debias", "--labels", dir.file("labels.csv"), "--groups",
                 dir.file("one_group.csv"), "--out", dir.file("out.csv")}) ==
        cli::kExitValidation);
  // Unwritable output path.
  {
    std::ofstream labels(dir.file("ok_labels.csv"), std::ios::binary);
    labels << "c0,c1\n1,0\n0,1\n";
    std::ofstream groups(dir.file("ok_groups.csv"), std::ios::binary);
    groups << "g\n0\n1\n";
  }
  CHECK(run_cli({"debias", "--labels", dir.file("ok_labels.csv"), "--groups",
                 dir.file("ok_groups.csv"), "--out",
                 (dir.path / "no_dir" / "out.csv").string()}) == cli::kExitIo);
}

TEST_CASE("cli repair-features maps disjoint groups onto the shared profile") {
  TempDir dir;
  {
    std::ofstream features(dir.file("features.csv"), std::ios::binary);
    features << "f0\n1\n2\n3\n4\n11\n12\n13\n14\n";
    std::ofstream groups(dir.file("groups.csv"), std::ios::binary);
    groups << "g\n0\n0\n0\n0\n1\n1\n1\n1\n";
  }
  CHECK(run_cli({"repair-features", "--features", dir.file("features.csv"),
                 "--groups", dir.file("groups.csv"), "--bins", "4", "--out",
                 dir.file("repaired.csv")}) == 0);
  const Matrix out = io::read_features_csv(dir.file("repaired.csv"));
  const std::vector<double> expected = {6, 7, 8, 9, 6, 7, 8, 9};
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(out(i, 0) == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("cli eval writes per-seed rows plus aggregates") {
  TempDir dir;
  CHECK(run_cli({"synth", "--classes", "3", "--features", "4", "--per-class",
                 "80", "--seed", "2", "--out", dir.path.string()}) == 0);
  CHECK(run_cli({"eval", "--data", dir.path.string(), "--method", "bl",
                 "--seeds", "3", "--k", "5", "--out",
                 dir.file("results.csv")}) == 0);
  const std::string text = slurp(dir.file("results.csv"));
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "seed,dp,acc,top2,top3,tv_acc,error_parity");
  int rows = 0;
  bool saw_mean = false, saw_ci = false;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.rfind("mean,", 0) == 0) saw_mean = true;
    if (line.rfind("ci99,", 0) == 0) saw_ci = true;
  }
  CHECK(rows == 5);  // 3 seeds + mean + ci99
  CHECK(saw_mean);
  CHECK(saw_ci);

  // A single seed leaves the half-widths NaN-marked.
  CHECK(run_cli({"eval", "--data", dir.path.string(), "--method", "bl",
                 "--seeds", "1", "--out", dir.file("one.csv")}) == 0);
  const std::string one = slurp(dir.file("one.csv"));
  CHECK(one.find("ci99,nan") != std::string::npos);
}

TEST_CASE("cli curves emits one row per epsilon and round") {
  TempDir dir;
  {
    std::ofstream labels(dir.file("labels.csv"), std::ios::binary);
    labels << "c0,c1,c2\n0.5,0.5,0\n1,0,0\n0,0,1\n";
    std::ofstream groups(dir.file("groups.csv"), std::ios::binary);
    groups << "g\n0\n1\n0\n";
  }
  CHECK(run_cli({"curves", "--labels", dir.file("labels.csv"), "--groups",
                 dir.file("groups.csv"), "--epsilons", "0,0.5", "--rounds",
                 "1", "--out", dir.file("curves.csv")}) == 0);
  const std::string text = slurp(dir.file("curves.csv"));
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "epsilon,round,training_dp,primal_residual,dual_residual");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 2);  // exactly |epsilons| rows for round 1
}
