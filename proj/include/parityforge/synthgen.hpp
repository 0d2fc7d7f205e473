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

#include <cstdint>

#include "parityforge/core.hpp"

namespace parityforge::synth {

// Gaussian mixture with a biased sensitive attribute: class means drawn from
// N(0, variance * I), each class contributing n_per_class points with
// component covariance variance * I. The group is the indicator of class 0
// with probability 1/2, otherwise uniform over the groups. variance < 0
// selects the default 1/d.
struct SynthConfig {
  std::int32_t n_classes = 4;
  std::int32_t n_features = 10;
  std::int32_t n_per_class = 1000;
  std::int32_t n_groups = 5;
  std::uint64_t seed = 0;
  double variance = -1.0;
};

TabularDataset generate(const SynthConfig& config);

// With probability p, an example's hard label is replaced by its group id
// (re-one-hot). Requires n_groups <= n_classes. Deterministic given seed.
TabularDataset inject_bias(const TabularDataset& dataset, double p,
                           std::uint64_t seed);

}  // namespace parityforge::synth
