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
#include "parityforge/evalharness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "parityforge/baselines.hpp"
#include "parityforge/kernels.hpp"
#include "parityforge/r2b.hpp"
#include "parityforge/rng.hpp"
#include "parityforge/threading.hpp"

namespace parityforge::eval {

LabelMatrix knn_predict(const KnnModel& model, const Matrix& query_features) {
  const std::size_t n_train = model.train_features.rows();
  const std::size_t dim = model.train_features.cols();
  const auto k = static_cast<std::size_t>(model.k);
  if (model.k < 1 || k > n_train) {
    throw InputError("knn_predict: k outside [1, n_train]");
  }
  if (query_features.cols() != dim) {
    throw InputError("knn_predict: feature dimension mismatch");
  }
  if (model.train_labels.n_examples() != n_train) {
    throw InputError("knn_predict: train features/labels length mismatch");
  }

  const std::size_t n_classes = model.train_labels.n_classes();
  Matrix out(query_features.rows(), n_classes, 0.0);

  parallel_for(query_features.rows(), [&](std::size_t q) {
    const double* query = query_features.row_ptr(q);
    std::vector<std::pair<double, std::uint32_t>> dist(n_train);
    for (std::size_t i = 0; i < n_train; ++i) {
      dist[i] = {kernels::sq_l2_dist(query, model.train_features.row_ptr(i),
                                     dim),
                 static_cast<std::uint32_t>(i)};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k),
                      dist.end());
    double* row = out.row_ptr(q);
    for (std::size_t j = 0; j < k; ++j) {
      const double* label = model.train_labels.data().row_ptr(dist[j].second);
      for (std::size_t c = 0; c < n_classes; ++c) row[c] += label[c];
    }
    const double inv_k = 1.0 / static_cast<double>(k);
    for (std::size_t c = 0; c < n_classes; ++c) row[c] *= inv_k;
  });

  return LabelMatrix(std::move(out));
}

Method method_from_name(std::string_view name) {
  if (name == "bl") return Method::kBaseline;
  if (name == "dpr") return Method::kDpr;
  if (name == "ml") return Method::kMultilabel;
  if (name == "r2b0") return Method::kR2b0;
  if (name == "r2b") return Method::kR2b;
  throw InputError("unknown method '" + std::string(name) +
                   "' (expected bl, dpr, ml, r2b0 or r2b)");
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kBaseline: return "bl";
    case Method::kDpr: return "dpr";
    case Method::kMultilabel: return "ml";
    case Method::kR2b0: return "r2b0";
    case Method::kR2b: return "r2b";
  }
  return "?";
}

namespace {

struct Split {
  std::vector<std::uint32_t> train;
  std::vector<std::uint32_t> test;
};

Split split_indices(std::size_t n, double test_fraction,
                    std::uint64_t split_seed) {
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  Rng rng(split_seed);
  rng.shuffle(order);
  auto n_test = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * test_fraction));
  n_test = std::clamp<std::size_t>(n_test, 1, n - 1);
  Split split;
  split.test.assign(order.begin(), order.begin() + static_cast<long>(n_test));
  split.train.assign(order.begin() + static_cast<long>(n_test), order.end());
  std::sort(split.test.begin(), split.test.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

Matrix take_rows(const Matrix& m, const std::vector<std::uint32_t>& idx) {
  Matrix out(idx.size(), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double* src = m.row_ptr(idx[i]);
    std::copy(src, src + m.cols(), out.row_ptr(i));
  }
  return out;
}

GroupVector take_groups(const GroupVector& groups,
                        const std::vector<std::uint32_t>& idx,
                        std::uint64_t split_seed, const char* side) {
  std::vector<std::int32_t> taken(idx.size());
  std::vector<std::size_t> counts(
      static_cast<std::size_t>(groups.n_groups()), 0);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    taken[i] = groups[idx[i]];
    ++counts[static_cast<std::size_t>(taken[i])];
  }
  for (std::int32_t s = 0; s < groups.n_groups(); ++s) {
    if (counts[static_cast<std::size_t>(s)] == 0) {
      throw SplitError("split with seed " + std::to_string(split_seed) +
                       " left group " + std::to_string(s) + " empty in the " +
                       side + " set; resample with a different seed");
    }
  }
  return GroupVector(std::move(taken), groups.n_groups());
}

}  // namespace

metrics::MetricReport run_experiment(const TabularDataset& dataset,
                                     const ExperimentOptions& options,
                                     std::uint64_t split_seed) {
  const Split split =
      split_indices(dataset.n_examples(), options.test_fraction, split_seed);

  Matrix train_features = take_rows(dataset.features, split.train);
  Matrix test_features = take_rows(dataset.features, split.test);
  LabelMatrix train_labels(take_rows(dataset.labels.data(), split.train));
  LabelMatrix test_labels(take_rows(dataset.labels.data(), split.test));
  GroupVector train_groups =
      take_groups(dataset.groups, split.train, split_seed, "training");
  GroupVector test_groups =
      take_groups(dataset.groups, split.test, split_seed, "test");

  switch (options.method) {
    case Method::kBaseline:
      break;
    case Method::kDpr: {
      const int bins = options.dpr_bins > 0
                           ? options.dpr_bins
                           : baselines::default_bin_count(train_groups);
      const baselines::QuantileTable table =
          baselines::fit_quantiles(train_features, train_groups, bins);
      train_features =
          baselines::dpr_transform(train_features, train_groups, table);
      test_features =
          baselines::dpr_transform(test_features, test_groups, table);
      break;
    }
    case Method::kMultilabel:
      train_labels =
          baselines::multilabel_debias(train_labels, train_groups,
                                       options.config);
      break;
    case Method::kR2b0:
      train_labels = baselines::r2b0(train_labels, train_groups,
                                     options.config);
      break;
    case Method::kR2b:
      train_labels =
          r2b::debias(train_labels, train_groups, options.config).labels;
      break;
  }

  const KnnModel model{std::move(train_features), std::move(train_labels),
                       options.k};
  const LabelMatrix predicted = knn_predict(model, test_features);

  std::vector<std::int32_t> truth(test_labels.n_examples());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    truth[i] = argmax_class(test_labels.row(i));
  }

  metrics::MetricReport report;
  report.dp = metrics::multiclass_dp(predicted, test_groups);
  report.accuracy = metrics::accuracy(predicted, truth);
  const auto n_classes = static_cast<std::int32_t>(predicted.n_classes());
  for (int k : {2, 3}) {
    if (k <= n_classes) {
      report.top_k_accuracy[k] = metrics::top_k_accuracy(predicted, truth, k);
    }
  }
  report.tv_accuracy = metrics::tv_accuracy(predicted, test_labels);
  report.error_parity = metrics::error_parity(predicted, truth, test_groups);
  return report;
}

Aggregate aggregate_values(const std::vector<double>& values) {
  Aggregate agg;
  const auto n = static_cast<double>(values.size());
  for (double v : values) agg.mean += v;
  agg.mean /= n;
  if (values.size() < 2) {
    agg.ci99_halfwidth = std::numeric_limits<double>::quiet_NaN();
    return agg;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - agg.mean) * (v - agg.mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(dist, 0.995);
  agg.ci99_halfwidth = t * sd / std::sqrt(n);
  return agg;
}

ExperimentResult sweep_one(const TabularDataset& dataset,
                           const ExperimentOptions& options, int n_seeds,
                           std::uint64_t base_seed) {
  if (n_seeds < 1) throw InputError("sweep: n_seeds must be >= 1");
  ExperimentResult result;
  result.method = std::string(method_name(options.method));
  result.per_seed.resize(static_cast<std::size_t>(n_seeds));

  parallel_for(static_cast<std::size_t>(n_seeds), [&](std::size_t i) {
    const std::string context = "seed " + std::to_string(base_seed + i) +
                                ", method " + result.method + ": ";
    try {
      result.per_seed[i] =
          run_experiment(dataset, options, base_seed + i);
    } catch (const SplitError& e) {
      throw SplitError(context + e.what());
    } catch (const Error& e) {
      throw Error(context + e.what());
    }
  });

  auto collect = [&](auto getter) {
    std::vector<double> values;
    values.reserve(result.per_seed.size());
    for (const auto& r : result.per_seed) values.push_back(getter(r));
    return aggregate_values(values);
  };
  result.dp = collect([](const auto& r) { return r.dp; });
  result.accuracy = collect([](const auto& r) { return r.accuracy; });
  result.tv_accuracy = collect([](const auto& r) { return r.tv_accuracy; });
  result.error_parity = collect([](const auto& r) { return r.error_parity; });
  for (const auto& [k, _] : result.per_seed.front().top_k_accuracy) {
    result.top_k[k] =
        collect([k = k](const auto& r) { return r.top_k_accuracy.at(k); });
  }
  return result;
}

std::vector<ExperimentResult> sweep(const TabularDataset& dataset,
                                    const std::vector<ExperimentOptions>& grid,
                                    int n_seeds, std::uint64_t base_seed) {
  if (grid.empty()) throw InputError("sweep: empty grid");
  std::vector<ExperimentResult> results;
  results.reserve(grid.size());
  for (const ExperimentOptions& options : grid) {
    results.push_back(sweep_one(dataset, options, n_seeds, base_seed));
  }
  return results;
}

}  // namespace parityforge::eval
