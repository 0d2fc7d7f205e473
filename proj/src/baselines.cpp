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
#include "parityforge/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "parityforge/r2b.hpp"
#include "parityforge/subsolver.hpp"
#include "parityforge/threading.hpp"

namespace parityforge::baselines {

LabelMatrix multilabel_debias(const LabelMatrix& labels,
                              const GroupVector& groups,
                              const DebiasConfig& config) {
  if (auto r = validate(labels, groups); !r.ok()) throw ValidationError(r);
  config.ensure_valid();

  const std::size_t n = labels.n_examples();
  const std::size_t n_classes = labels.n_classes();
  Matrix debiased(n, n_classes, 0.0);

  parallel_for(n_classes, [&](std::size_t k) {
    std::vector<double> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = labels(i, k);
    subsolver::ClassSubproblem problem{column, groups, config.epsilon,
                                       config.lambda};
    const subsolver::SubproblemSolution sol =
        subsolver::solve_class(problem, config.outer_tol, config.inner_tol);
    for (std::size_t i = 0; i < n; ++i) debiased(i, k) = sol.values[i];
  });

  for (std::size_t i = 0; i < n; ++i) {
    double* row = debiased.row_ptr(i);
    double row_sum = 0.0;
    for (std::size_t k = 0; k < n_classes; ++k) row_sum += row[k];
    if (row_sum <= 1e-12) {
      throw NumericalError(
          "multilabel_debias: row " + std::to_string(i) +
              " degenerated to zero after independent debiasing",
          0);
    }
    for (std::size_t k = 0; k < n_classes; ++k) row[k] /= row_sum;
  }
  return LabelMatrix(std::move(debiased));
}

LabelMatrix r2b0(const LabelMatrix& labels, const GroupVector& groups,
                 const DebiasConfig& config) {
  DebiasConfig one_round = config;
  one_round.max_rounds = 1;
  return r2b::debias(labels, groups, one_round).labels;
}

QuantileTable::QuantileTable(std::size_t n_features, std::int32_t n_groups,
                             int n_bins)
    : n_groups_(n_groups), n_bins_(n_bins) {
  if (n_bins < 1) throw InputError("QuantileTable: n_bins must be >= 1");
  knots_.assign(n_features,
                std::vector<std::vector<double>>(
                    static_cast<std::size_t>(n_groups),
                    std::vector<double>(static_cast<std::size_t>(n_bins) + 1)));
}

double QuantileTable::rank_of(std::size_t feature, std::int32_t group,
                              double x) const {
  const std::vector<double>& k = knots(feature, group);
  if (x <= k.front()) return 0.0;
  if (x >= k.back()) return 1.0;
  // First knot strictly greater than x; its predecessor anchors the segment.
  const auto it = std::upper_bound(k.begin(), k.end(), x);
  const auto j = static_cast<std::size_t>(it - k.begin()) - 1;
  const double width = k[j + 1] - k[j];
  const double frac = (x - k[j]) / width;
  return (static_cast<double>(j) + frac) / static_cast<double>(n_bins_);
}

double QuantileTable::value_at(std::size_t feature, std::int32_t group,
                               double p) const {
  const std::vector<double>& k = knots(feature, group);
  const double t = std::clamp(p, 0.0, 1.0) * static_cast<double>(n_bins_);
  const auto j = std::min(static_cast<std::size_t>(t),
                          static_cast<std::size_t>(n_bins_) - 1);
  const double frac = t - static_cast<double>(j);
  return k[j] + frac * (k[j + 1] - k[j]);
}

namespace {

// Linear interpolation between order statistics of sorted data.
double interpolated_quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(pos), sorted.size() - 1);
  const double frac = pos - static_cast<double>(i);
  if (i + 1 >= sorted.size()) return sorted[i];
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

}  // namespace

QuantileTable fit_quantiles(const Matrix& features, const GroupVector& groups,
                            int n_bins) {
  if (features.rows() != groups.size()) {
    throw InputError("fit_quantiles: features/groups length mismatch");
  }
  if (n_bins < 1) throw InputError("fit_quantiles: n_bins must be >= 1");

  QuantileTable table(features.cols(), groups.n_groups(), n_bins);
  std::vector<double> values;
  for (std::size_t j = 0; j < features.cols(); ++j) {
    for (std::int32_t s = 0; s < groups.n_groups(); ++s) {
      const auto& members = groups.members()[static_cast<std::size_t>(s)];
      values.resize(members.size());
      for (std::size_t i = 0; i < members.size(); ++i) {
        values[i] = features(members[i], j);
      }
      std::sort(values.begin(), values.end());
      std::vector<double>& knots = table.mutable_knots(j, s);
      for (int t = 0; t <= n_bins; ++t) {
        knots[static_cast<std::size_t>(t)] = interpolated_quantile(
            values, static_cast<double>(t) / static_cast<double>(n_bins));
      }
    }
  }
  return table;
}

Matrix dpr_transform(const Matrix& features, const GroupVector& groups,
                     const QuantileTable& table) {
  if (features.rows() != groups.size()) {
    throw InputError("dpr_transform: features/groups length mismatch");
  }
  if (features.cols() != table.n_features() ||
      groups.n_groups() != table.n_groups()) {
    throw InputError("dpr_transform: table fitted on incompatible data");
  }

  const auto n_groups = static_cast<std::size_t>(table.n_groups());
  const double inv_groups = 1.0 / static_cast<double>(n_groups);
  Matrix out(features.rows(), features.cols(), 0.0);
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const std::int32_t g = groups[i];
    for (std::size_t j = 0; j < features.cols(); ++j) {
      const double rank = table.rank_of(j, g, features(i, j));
      double acc = 0.0;
      for (std::size_t s = 0; s < n_groups; ++s) {
        acc += table.value_at(j, static_cast<std::int32_t>(s), rank);
      }
      out(i, j) = acc * inv_groups;
    }
  }
  return out;
}

int default_bin_count(const GroupVector& groups) {
  return static_cast<int>(
      std::min<std::size_t>(groups.smallest_group_size(), 256));
}

}  // namespace parityforge::baselines
