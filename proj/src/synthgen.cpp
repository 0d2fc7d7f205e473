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
#include "parityforge/synthgen.hpp"

#include <cmath>

#include "parityforge/rng.hpp"

namespace parityforge::synth {

TabularDataset generate(const SynthConfig& config) {
  if (config.n_classes < 2) throw InputError("synth: n_classes must be >= 2");
  if (config.n_features < 1) throw InputError("synth: n_features must be >= 1");
  if (config.n_per_class < 1) {
    throw InputError("synth: n_per_class must be >= 1");
  }
  if (config.n_groups < 2) throw InputError("synth: n_groups must be >= 2");

  const auto n_classes = static_cast<std::size_t>(config.n_classes);
  const auto n_features = static_cast<std::size_t>(config.n_features);
  const auto n_per_class = static_cast<std::size_t>(config.n_per_class);
  const std::size_t n = n_classes * n_per_class;
  const double variance = config.variance < 0.0
                              ? 1.0 / static_cast<double>(config.n_features)
                              : config.variance;
  const double sigma = std::sqrt(variance);

  Rng rng(config.seed);

  Matrix means(n_classes, n_features);
  for (std::size_t k = 0; k < n_classes; ++k) {
    for (std::size_t j = 0; j < n_features; ++j) {
      means(k, j) = sigma * rng.normal();
    }
  }

  Matrix features(n, n_features);
  std::vector<std::int32_t> hard_labels(n);
  std::size_t row = 0;
  for (std::size_t k = 0; k < n_classes; ++k) {
    for (std::size_t i = 0; i < n_per_class; ++i, ++row) {
      hard_labels[row] = static_cast<std::int32_t>(k);
      for (std::size_t j = 0; j < n_features; ++j) {
        features(row, j) = means(k, j) + sigma * rng.normal();
      }
    }
  }

  std::vector<std::int32_t> group_ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < 0.5) {
      group_ids[i] = hard_labels[i] == 0 ? 1 : 0;
    } else {
      group_ids[i] = rng.uniform_int(config.n_groups);
    }
  }

  return TabularDataset(std::move(features),
                        one_hot_encode(hard_labels, config.n_classes),
                        GroupVector(std::move(group_ids), config.n_groups));
}

TabularDataset inject_bias(const TabularDataset& dataset, double p,
                           std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError("inject_bias: p must be in [0, 1]");
  }
  const auto n_classes = static_cast<std::int32_t>(dataset.labels.n_classes());
  if (dataset.groups.n_groups() > n_classes) {
    throw InputError("inject_bias: group ids exceed the number of classes");
  }

  Rng rng(seed);
  Matrix scores = dataset.labels.data();
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    if (rng.uniform() < p) {
      double* row = scores.row_ptr(i);
      for (std::size_t k = 0; k < scores.cols(); ++k) row[k] = 0.0;
      row[static_cast<std::size_t>(dataset.groups[i])] = 1.0;
    }
  }
  return TabularDataset(dataset.features, LabelMatrix(std::move(scores)),
                        dataset.groups);
}

}  // namespace parityforge::synth
