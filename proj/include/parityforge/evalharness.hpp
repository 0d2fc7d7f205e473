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
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "parityforge/core.hpp"
#include "parityforge/metrics.hpp"

namespace parityforge::eval {

// kNN with Euclidean distance that averages the (possibly soft) label rows
// of the k nearest training examples. Holds no group information: the
// sensitive attribute is never an input to prediction.
struct KnnModel {
  Matrix train_features;
  LabelMatrix train_labels;
  int k = 5;
};

// Ties on distance break toward the smallest training index. Output rows
// average row-stochastic rows, so they sum to 1.
LabelMatrix knn_predict(const KnnModel& model, const Matrix& query_features);

enum class Method { kBaseline, kDpr, kMultilabel, kR2b0, kR2b };

// Accepts "bl", "dpr", "ml", "r2b0", "r2b"; throws InputError otherwise.
Method method_from_name(std::string_view name);
std::string_view method_name(Method method);

struct ExperimentOptions {
  Method method = Method::kBaseline;
  DebiasConfig config;
  int k = 5;
  double test_fraction = 0.25;
  int dpr_bins = 0;  // 0 selects min(smallest train group, 256)
};

// 75/25 split by seed, transformation of the TRAINING data only (labels for
// ml/r2b0/r2b, features for dpr -- whose fitted transform is then applied to
// the test features as well), kNN fit, metrics on the test split. Throws
// SplitError when a split leaves some group empty.
metrics::MetricReport run_experiment(const TabularDataset& dataset,
                                     const ExperimentOptions& options,
                                     std::uint64_t split_seed);

struct Aggregate {
  double mean = 0.0;
  double ci99_halfwidth = 0.0;  // Student-t over seeds; NaN for one seed
};

struct ExperimentResult {
  std::string method;
  std::vector<metrics::MetricReport> per_seed;
  Aggregate dp, accuracy, tv_accuracy, error_parity;
  std::map<int, Aggregate> top_k;
};

// Seeds run concurrently with split seeds base_seed + 0..n_seeds-1.
ExperimentResult sweep_one(const TabularDataset& dataset,
                           const ExperimentOptions& options, int n_seeds,
                           std::uint64_t base_seed = 0);

// One result per grid point; all points share the same seeds.
std::vector<ExperimentResult> sweep(const TabularDataset& dataset,
                                    const std::vector<ExperimentOptions>& grid,
                                    int n_seeds, std::uint64_t base_seed = 0);

// Mean and 99% CI half-width (Student-t, n-1 degrees of freedom).
Aggregate aggregate_values(const std::vector<double>& values);

}  // namespace parityforge::eval
