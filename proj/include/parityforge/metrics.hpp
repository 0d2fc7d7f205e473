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
#include <span>

#include "parityforge/core.hpp"

namespace parityforge::metrics {

// R x L table; entry (s, k) is the mean score of class k over group s.
struct GroupMeansTable {
  Matrix means;
  std::size_t n_groups() const { return means.rows(); }
  std::size_t n_classes() const { return means.cols(); }
};

struct MetricReport {
  double dp = 0.0;
  double accuracy = 0.0;
  std::map<int, double> top_k_accuracy;
  double tv_accuracy = 0.0;
  double error_parity = 0.0;
};

// Raw-matrix overloads exist because intermediate score matrices (the
// unnormalized per-class solutions inside a debias round) are not
// row-stochastic and cannot be held in a LabelMatrix.
GroupMeansTable group_means(const Matrix& scores, const GroupVector& groups);
GroupMeansTable group_means(const LabelMatrix& scores,
                            const GroupVector& groups);

// Worst class-wise range of group-conditional mean scores.
double multiclass_dp(const Matrix& scores, const GroupVector& groups);
double multiclass_dp(const LabelMatrix& scores, const GroupVector& groups);

// Fraction of rows whose argmax (ties to the smallest class index) equals
// the true class.
double accuracy(const LabelMatrix& predicted,
                std::span<const std::int32_t> truth);

// Fraction of rows whose true class ranks among the k largest scores, ties
// broken by the smallest class index. Throws InputError unless 1 <= k <= L.
double top_k_accuracy(const LabelMatrix& predicted,
                      std::span<const std::int32_t> truth, std::int32_t k);

// Mean over rows of 1 - (1/2) * L1 distance between the two rows.
double tv_accuracy(const LabelMatrix& predicted, const LabelMatrix& truth);

// Max minus min of the per-group 0-1 losses of the argmax predictions.
double error_parity(const LabelMatrix& predicted,
                    std::span<const std::int32_t> truth,
                    const GroupVector& groups);

}  // namespace parityforge::metrics
