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

#include <vector>

#include "parityforge/core.hpp"

namespace parityforge::baselines {

// Debiases every class column independently (no consensus term), then
// divides each row by its sum. The per-column stage removes all group-mean
// gaps, but the row normalization can reintroduce bias: the output carries
// no demographic parity guarantee. Throws NumericalError if a row sum
// degenerates below 1e-12.
LabelMatrix multilabel_debias(const LabelMatrix& labels,
                              const GroupVector& groups,
                              const DebiasConfig& config);

// A single consensus round (including the final clamp-and-renormalize
// repair); equal to r2b::debias with max_rounds = 1.
LabelMatrix r2b0(const LabelMatrix& labels, const GroupVector& groups,
                 const DebiasConfig& config);

// Equal-mass empirical quantile functions per (feature, group): B+1 knots at
// probabilities 0, 1/B, ..., 1 computed with linear interpolation between
// order statistics.
class QuantileTable {
 public:
  QuantileTable(std::size_t n_features, std::int32_t n_groups, int n_bins);

  int n_bins() const { return n_bins_; }
  std::size_t n_features() const { return knots_.size(); }
  std::int32_t n_groups() const { return n_groups_; }

  const std::vector<double>& knots(std::size_t feature,
                                   std::int32_t group) const {
    return knots_[feature][static_cast<std::size_t>(group)];
  }
  std::vector<double>& mutable_knots(std::size_t feature, std::int32_t group) {
    return knots_[feature][static_cast<std::size_t>(group)];
  }

  // F_s(x): rank in [0, 1] by inverse interpolation of the knots; values
  // outside the fitted range clamp to 0 or 1.
  double rank_of(std::size_t feature, std::int32_t group, double x) const;
  // F_s^{-1}(p): value at probability p (clamped to [0, 1]).
  double value_at(std::size_t feature, std::int32_t group, double p) const;

 private:
  std::int32_t n_groups_;
  int n_bins_;
  std::vector<std::vector<std::vector<double>>> knots_;  // [feature][group]
};

QuantileTable fit_quantiles(const Matrix& features, const GroupVector& groups,
                            int n_bins);

// Full repair: each value maps to the across-group average quantile at its
// own group rank. Rank-preserving within each (feature, group).
Matrix dpr_transform(const Matrix& features, const GroupVector& groups,
                     const QuantileTable& table);

// min(smallest group size, 256)
int default_bin_count(const GroupVector& groups);

}  // namespace parityforge::baselines
