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
#include "parityforge/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace parityforge::metrics {

namespace {

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InputError(std::string(what) + ": length mismatch (" +
                     std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

GroupMeansTable group_means(const Matrix& scores, const GroupVector& groups) {
  check_lengths(scores.rows(), groups.size(), "group_means");
  const std::size_t n_classes = scores.cols();
  const auto n_groups = static_cast<std::size_t>(groups.n_groups());
  Matrix means(n_groups, n_classes, 0.0);
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    double* out = means.row_ptr(static_cast<std::size_t>(groups[i]));
    const double* row = scores.row_ptr(i);
    for (std::size_t k = 0; k < n_classes; ++k) out[k] += row[k];
  }
  for (std::size_t s = 0; s < n_groups; ++s) {
    const double inv = 1.0 / static_cast<double>(groups.group_sizes()[s]);
    double* out = means.row_ptr(s);
    for (std::size_t k = 0; k < n_classes; ++k) out[k] *= inv;
  }
  return {std::move(means)};
}

GroupMeansTable group_means(const LabelMatrix& scores,
                            const GroupVector& groups) {
  return group_means(scores.data(), groups);
}

double multiclass_dp(const Matrix& scores, const GroupVector& groups) {
  const GroupMeansTable table = group_means(scores, groups);
  double worst = 0.0;
  for (std::size_t k = 0; k < table.n_classes(); ++k) {
    double lo = table.means(0, k);
    double hi = lo;
    for (std::size_t s = 1; s < table.n_groups(); ++s) {
      lo = std::min(lo, table.means(s, k));
      hi = std::max(hi, table.means(s, k));
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

double multiclass_dp(const LabelMatrix& scores, const GroupVector& groups) {
  return multiclass_dp(scores.data(), groups);
}

double accuracy(const LabelMatrix& predicted,
                std::span<const std::int32_t> truth) {
  check_lengths(predicted.n_examples(), truth.size(), "accuracy");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (argmax_class(predicted.row(i)) == truth[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double top_k_accuracy(const LabelMatrix& predicted,
                      std::span<const std::int32_t> truth, std::int32_t k) {
  check_lengths(predicted.n_examples(), truth.size(), "top_k_accuracy");
  const auto n_classes = static_cast<std::int32_t>(predicted.n_classes());
  if (k < 1 || k > n_classes) {
    throw InputError("top_k_accuracy: k = " + std::to_string(k) +
                     " outside [1, " + std::to_string(n_classes) + "]");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto row = predicted.row(i);
    const auto t = static_cast<std::size_t>(truth[i]);
    const double score = row[t];
    // Rank of the true class under (score desc, index asc) ordering.
    std::int32_t rank = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] > score || (row[j] == score && j < t)) ++rank;
    }
    if (rank < k) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double tv_accuracy(const LabelMatrix& predicted, const LabelMatrix& truth) {
  if (predicted.n_examples() != truth.n_examples() ||
      predicted.n_classes() != truth.n_classes()) {
    throw InputError("tv_accuracy: shape mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < predicted.n_examples(); ++i) {
    double l1 = 0.0;
    const auto p = predicted.row(i);
    const auto t = truth.row(i);
    for (std::size_t kk = 0; kk < p.size(); ++kk) l1 += std::abs(p[kk] - t[kk]);
    total += 1.0 - 0.5 * l1;
  }
  return total / static_cast<double>(predicted.n_examples());
}

double error_parity(const LabelMatrix& predicted,
                    std::span<const std::int32_t> truth,
                    const GroupVector& groups) {
  check_lengths(predicted.n_examples(), truth.size(), "error_parity");
  check_lengths(predicted.n_examples(), groups.size(), "error_parity");
  const auto n_groups = static_cast<std::size_t>(groups.n_groups());
  std::vector<std::size_t> errors(n_groups, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (argmax_class(predicted.row(i)) != truth[i]) {
      ++errors[static_cast<std::size_t>(groups[i])];
    }
  }
  double lo = 1.0, hi = 0.0;
  for (std::size_t s = 0; s < n_groups; ++s) {
    const double loss = static_cast<double>(errors[s]) /
                        static_cast<double>(groups.group_sizes()[s]);
    lo = std::min(lo, loss);
    hi = std::max(hi, loss);
  }
  return hi - lo;
}

}  // namespace parityforge::metrics
