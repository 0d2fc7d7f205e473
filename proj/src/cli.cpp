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
#include "parityforge/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parityforge/baselines.hpp"
#include "parityforge/evalharness.hpp"
#include "parityforge/io.hpp"
#include "parityforge/metrics.hpp"
#include "parityforge/r2b.hpp"
#include "parityforge/synthgen.hpp"

namespace parityforge::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct SynthArgs {
  std::int32_t classes = 4;
  std::int32_t features = 10;
  std::int32_t per_class = 1000;
  std::int32_t groups = 5;
  std::uint64_t seed = 0;
  std::string out_dir;
  double inject_bias = -1.0;  // < 0: no injection
};

int run_synth(const SynthArgs& args) {
  synth::SynthConfig config;
  config.n_classes = args.classes;
  config.n_features = args.features;
  config.n_per_class = args.per_class;
  config.n_groups = args.groups;
  config.seed = args.seed;

  TabularDataset dataset = synth::generate(config);
  if (args.inject_bias >= 0.0) {
    dataset = synth::inject_bias(dataset, args.inject_bias, args.seed + 1);
  }

  io::write_features_csv(args.out_dir + "/features.csv", dataset.features);
  io::write_labels_csv(args.out_dir + "/labels.csv", dataset.labels);
  io::write_groups_csv(args.out_dir + "/groups.csv", dataset.groups);

  std::cerr << "synth: " << dataset.n_examples() << " examples, "
            << dataset.labels.n_classes() << " classes, "
            << dataset.features.cols() << " features, "
            << dataset.groups.n_groups() << " groups; label DP = "
            << metrics::multiclass_dp(dataset.labels, dataset.groups) << "\n";
  return kExitOk;
}

struct DebiasArgs {
  std::string labels_path;
  std::string groups_path;
  std::string method = "r2b";
  DebiasConfig config;
  std::string out_path;
  std::string report_path;
};

int run_debias(const DebiasArgs& args) {
  const LabelMatrix labels = io::read_labels_csv(args.labels_path);
  const GroupVector groups = io::read_groups_csv(args.groups_path);
  if (auto r = validate(labels, groups); !r.ok()) throw ValidationError(r);

  const auto start = Clock::now();
  LabelMatrix output = labels;
  r2b::DebiasReport report;
  report.config_echo = args.config;

  if (args.method == "r2b") {
    auto result = r2b::debias(labels, groups, args.config);
    output = std::move(result.labels);
    report = std::move(result.report);
  } else if (args.method == "r2b0") {
    DebiasConfig one_round = args.config;
    one_round.max_rounds = 1;
    auto result = r2b::debias(labels, groups, one_round);
    output = std::move(result.labels);
    report = std::move(result.report);
  } else if (args.method == "ml") {
    output = baselines::multilabel_debias(labels, groups, args.config);
    report.rounds_run = 0;
    report.final_dp = metrics::multiclass_dp(output, groups);
    report.max_clamp_adjustment = 0.0;
  } else {
    throw InputError("debias: unknown method '" + args.method + "'");
  }
  const double ms = elapsed_ms(start);

  io::write_labels_csv(args.out_path, output);
  if (!args.report_path.empty()) {
    io::write_debias_report(args.report_path, report, ms);
  }
  std::cerr << "debias(" << args.method << "): rounds=" << report.rounds_run
            << " final_dp=" << report.final_dp << " (" << ms << " ms)\n";
  return kExitOk;
}

struct RepairArgs {
  std::string features_path;
  std::string groups_path;
  int bins = 0;
  std::string out_path;
};

int run_repair(const RepairArgs& args) {
  const Matrix features = io::read_features_csv(args.features_path);
  const GroupVector groups = io::read_groups_csv(args.groups_path);
  const int bins =
      args.bins > 0 ? args.bins : baselines::default_bin_count(groups);
  const baselines::QuantileTable table =
      baselines::fit_quantiles(features, groups, bins);
  io::write_features_csv(args.out_path,
                         baselines::dpr_transform(features, groups, table));
  std::cerr << "repair-features: " << features.cols() << " features, " << bins
            << " bins\n";
  return kExitOk;
}

struct EvalArgs {
  std::string data_dir;
  std::string method = "bl";
  DebiasConfig config;
  int seeds = 10;
  int k = 5;
  int bins = 0;
  std::string out_path;
};

int run_eval(const EvalArgs& args) {
  const TabularDataset dataset(
      io::read_features_csv(args.data_dir + "/features.csv"),
      io::read_labels_csv(args.data_dir + "/labels.csv"),
      io::read_groups_csv(args.data_dir + "/groups.csv"));

  eval::ExperimentOptions options;
  options.method = eval::method_from_name(args.method);
  options.config = args.config;
  options.k = args.k;
  options.dpr_bins = args.bins;

  const eval::ExperimentResult result =
      eval::sweep_one(dataset, options, args.seeds);

  std::ofstream out(args.out_path, std::ios::binary);
  if (!out) throw io::IoError("cannot open '" + args.out_path + "'");
  out << "seed,dp,acc,top2,top3,tv_acc,error_parity\n";
  auto top_or_nan = [](const metrics::MetricReport& r, int k) {
    const auto it = r.top_k_accuracy.find(k);
    return it == r.top_k_accuracy.end()
               ? std::numeric_limits<double>::quiet_NaN()
               : it->second;
  };
  for (std::size_t i = 0; i < result.per_seed.size(); ++i) {
    const auto& r = result.per_seed[i];
    out << i << ',' << io::format_double(r.dp) << ','
        << io::format_double(r.accuracy) << ','
        << io::format_double(top_or_nan(r, 2)) << ','
        << io::format_double(top_or_nan(r, 3)) << ','
        << io::format_double(r.tv_accuracy) << ','
        << io::format_double(r.error_parity) << '\n';
  }
  auto agg_or_nan = [&](int k) {
    const auto it = result.top_k.find(k);
    static const eval::Aggregate kNan{
        std::numeric_limits<double>::quiet_NaN(),
        std::numeric_limits<double>::quiet_NaN()};
    return it == result.top_k.end() ? kNan : it->second;
  };
  out << "mean," << io::format_double(result.dp.mean) << ','
      << io::format_double(result.accuracy.mean) << ','
      << io::format_double(agg_or_nan(2).mean) << ','
      << io::format_double(agg_or_nan(3).mean) << ','
      << io::format_double(result.tv_accuracy.mean) << ','
      << io::format_double(result.error_parity.mean) << '\n';
  out << "ci99," << io::format_double(result.dp.ci99_halfwidth) << ','
      << io::format_double(result.accuracy.ci99_halfwidth) << ','
      << io::format_double(agg_or_nan(2).ci99_halfwidth) << ','
      << io::format_double(agg_or_nan(3).ci99_halfwidth) << ','
      << io::format_double(result.tv_accuracy.ci99_halfwidth) << ','
      << io::format_double(result.error_parity.ci99_halfwidth) << '\n';
  if (!out) throw io::IoError("failed writing '" + args.out_path + "'");

  std::cerr << "eval(" << args.method << "): dp=" << result.dp.mean << "±"
            << result.dp.ci99_halfwidth << " acc=" << result.accuracy.mean
            << "±" << result.accuracy.ci99_halfwidth << " over " << args.seeds
            << " seeds\n";
  return kExitOk;
}

struct CurvesArgs {
  std::string labels_path;
  std::string groups_path;
  std::string epsilons = "0";
  int rounds = 100;
  double tau = 0.5;
  double lambda = 1.0;
  std::string out_path;
};

int run_curves(const CurvesArgs& args) {
  const LabelMatrix labels = io::read_labels_csv(args.labels_path);
  const GroupVector groups = io::read_groups_csv(args.groups_path);

  std::vector<double> epsilons;
  std::stringstream stream(args.epsilons);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t used = 0;
      const double eps = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      epsilons.push_back(eps);
    } catch (const std::exception&) {
      throw io::ParseError("curves: bad epsilon '" + token + "'");
    }
  }
  if (epsilons.empty()) throw InputError("curves: no epsilons given");

  std::ofstream out(args.out_path, std::ios::binary);
  if (!out) throw io::IoError("cannot open '" + args.out_path + "'");
  out << "epsilon,round,training_dp,primal_residual,dual_residual\n";
  for (const double eps : epsilons) {
    DebiasConfig config;
    config.epsilon = eps;
    config.tau = args.tau;
    config.lambda = args.lambda;
    config.max_rounds = args.rounds;
    config.residual_tol = 1e-300;  // trace every requested round
    const auto result = r2b::debias(labels, groups, config);
    for (int r = 0; r < result.report.rounds_run; ++r) {
      out << io::format_double(eps) << ',' << (r + 1) << ','
          << io::format_double(result.report.dp_trace[r]) << ','
          << io::format_double(result.report.primal_trace[r]) << ','
          << io::format_double(result.report.dual_trace[r]) << '\n';
    }
  }
  if (!out) throw io::IoError("failed writing '" + args.out_path + "'");
  return kExitOk;
}

void add_config_flags(CLI::App* cmd, DebiasConfig& config) {
  cmd->add_option("--epsilon", config.epsilon,
                  "demographic parity tolerance (>= 0)");
  cmd->add_option("--tau", config.tau, "ADMM step size (> 0)");
  cmd->add_option("--lambda", config.lambda, "regularization weight (> 0)");
  cmd->add_option("--max-rounds", config.max_rounds, "round limit");
  cmd->add_option("--residual-tol", config.residual_tol,
                  "early-exit threshold on the residual sum");
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "parityforge: multiclass demographic-parity preprocessing toolkit"};
  app.footer(
      "Exit codes: 0 ok, 2 parse/flags, 3 validation, 4 numerical, 5 split, "
      "6 i/o.");
  app.require_subcommand(1);

  SynthArgs synth_args;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "generate a synthetic dataset triple");
  synth_cmd->add_option("--classes", synth_args.classes, "number of classes")
      ->required();
  synth_cmd
      ->add_option("--features", synth_args.features, "number of features")
      ->required();
  synth_cmd
      ->add_option("--per-class", synth_args.per_class, "examples per class")
      ->required();
  synth_cmd->add_option("--groups", synth_args.groups, "number of groups");
  synth_cmd->add_option("--seed", synth_args.seed, "RNG seed");
  synth_cmd->add_option("--out", synth_args.out_dir, "output directory")
      ->required();
  synth_cmd->add_option("--inject-bias", synth_args.inject_bias,
                        "probability of replacing a label by the group id");

  DebiasArgs debias_args;
  CLI::App* debias_cmd =
      app.add_subcommand("debias", "debias a label matrix");
  debias_cmd->add_option("--labels", debias_args.labels_path, "labels CSV")
      ->required();
  debias_cmd->add_option("--groups", debias_args.groups_path, "groups CSV")
      ->required();
  debias_cmd
      ->add_option("--method", debias_args.method, "r2b, r2b0 or ml")
      ->check(CLI::IsMember({"r2b", "r2b0", "ml"}));
  add_config_flags(debias_cmd, debias_args.config);
  debias_cmd->add_option("--out", debias_args.out_path, "debiased labels CSV")
      ->required();
  debias_cmd->add_option("--report", debias_args.report_path,
                         "report JSON path");

  RepairArgs repair_args;
  CLI::App* repair_cmd = app.add_subcommand(
      "repair-features", "quantile-matching feature repair");
  repair_cmd
      ->add_option("--features", repair_args.features_path, "features CSV")
      ->required();
  repair_cmd->add_option("--groups", repair_args.groups_path, "groups CSV")
      ->required();
  repair_cmd->add_option("--bins", repair_args.bins,
                         "equal-mass bins (default: min(group size, 256))");
  repair_cmd->add_option("--out", repair_args.out_path, "repaired CSV")
      ->required();

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "seeded kNN experiment sweep on a dataset directory");
  eval_cmd->add_option("--data", eval_args.data_dir,
                       "directory with features.csv labels.csv groups.csv")
      ->required();
  eval_cmd->add_option("--method", eval_args.method, "bl, dpr, ml, r2b0, r2b");
  add_config_flags(eval_cmd, eval_args.config);
  eval_cmd->add_option("--seeds", eval_args.seeds, "number of split seeds");
  eval_cmd->add_option("--k", eval_args.k, "kNN neighbor count");
  eval_cmd->add_option("--bins", eval_args.bins, "DPR bin count");
  eval_cmd->add_option("--out", eval_args.out_path, "results CSV")->required();

  CurvesArgs curves_args;
  CLI::App* curves_cmd = app.add_subcommand(
      "curves", "per-round convergence traces for a list of epsilons");
  curves_cmd->add_option("--labels", curves_args.labels_path, "labels CSV")
      ->required();
  curves_cmd->add_option("--groups", curves_args.groups_path, "groups CSV")
      ->required();
  curves_cmd->add_option("--epsilons", curves_args.epsilons,
                         "comma-separated DP tolerances");
  curves_cmd->add_option("--rounds", curves_args.rounds, "rounds to trace");
  curves_cmd->add_option("--tau", curves_args.tau, "ADMM step size");
  curves_cmd->add_option("--out", curves_args.out_path, "long-format CSV")
      ->required();

  try {
    app.parse(argc, argv);
    if (synth_cmd->parsed()) return run_synth(synth_args);
    if (debias_cmd->parsed()) return run_debias(debias_args);
    if (repair_cmd->parsed()) return run_repair(repair_args);
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (curves_cmd->parsed()) return run_curves(curves_args);
    return kExitParse;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const io::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SplitError& e) {
    std::cerr << "split error: " << e.what() << "\n";
    return kExitSplit;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnexpected;
  }
}

}  // namespace parityforge::cli
