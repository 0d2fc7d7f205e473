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
#include "parityforge/core.hpp"

#include <algorithm>
#include <cmath>

namespace parityforge {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw InputError("Matrix: data size does not match rows*cols");
  }
}

const char* validation_code_name(ValidationCode code) {
  switch (code) {
    case ValidationCode::kOk: return "ok";
    case ValidationCode::kNoExamples: return "no_examples";
    case ValidationCode::kTooFewClasses: return "too_few_classes";
    case ValidationCode::kNegativeEntry: return "negative_entry";
    case ValidationCode::kEntryAboveOne: return "entry_above_one";
    case ValidationCode::kRowSumViolation: return "row_sum_violation";
    case ValidationCode::kLengthMismatch: return "length_mismatch";
    case ValidationCode::kTooFewGroups: return "too_few_groups";
    case ValidationCode::kGroupIdOutOfRange: return "group_id_out_of_range";
    case ValidationCode::kEmptyGroup: return "empty_group";
  }
  return "unknown";
}

ValidationResult validate_scores(const Matrix& scores) {
  if (scores.rows() < 1) {
    return {ValidationCode::kNoExamples, "label matrix has no rows"};
  }
  if (scores.cols() < 2) {
    return {ValidationCode::kTooFewClasses,
            "label matrix needs at least 2 classes, got " +
                std::to_string(scores.cols())};
  }
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    double row_sum = 0.0;
    for (std::size_t k = 0; k < scores.cols(); ++k) {
      const double v = scores(i, k);
      if (!std::isfinite(v) || v < -kEntryTolerance) {
        return {ValidationCode::kNegativeEntry,
                "entry (" + std::to_string(i) + "," + std::to_string(k) +
                    ") = " + std::to_string(v)};
      }
      if (v > 1.0 + kEntryTolerance) {
        return {ValidationCode::kEntryAboveOne,
                "entry (" + std::to_string(i) + "," + std::to_string(k) +
                    ") = " + std::to_string(v)};
      }
      row_sum += v;
    }
    if (std::abs(row_sum - 1.0) > kRowSumTolerance) {
      return {ValidationCode::kRowSumViolation,
              "row " + std::to_string(i) + " sums to " +
                  std::to_string(row_sum)};
    }
  }
  return {};
}

namespace {

ValidationResult validate_groups(std::span<const std::int32_t> groups,
                                 std::int32_t n_groups) {
  if (n_groups < 2) {
    return {ValidationCode::kTooFewGroups,
            "need at least 2 groups, got " + std::to_string(n_groups)};
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_groups), 0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::int32_t g = groups[i];
    if (g < 0 || g >= n_groups) {
      return {ValidationCode::kGroupIdOutOfRange,
              "example " + std::to_string(i) + " has group " +
                  std::to_string(g)};
    }
    ++counts[static_cast<std::size_t>(g)];
  }
  for (std::int32_t s = 0; s < n_groups; ++s) {
    if (counts[static_cast<std::size_t>(s)] == 0) {
      return {ValidationCode::kEmptyGroup,
              "group " + std::to_string(s) + " has no members"};
    }
  }
  return {};
}

}  // namespace

ValidationResult validate(const Matrix& scores,
                          std::span<const std::int32_t> groups,
                          std::int32_t n_groups) {
  if (scores.rows() != groups.size()) {
    return {ValidationCode::kLengthMismatch,
            "labels have " + std::to_string(scores.rows()) +
                " rows but groups have " + std::to_string(groups.size())};
  }
  if (auto r = validate_scores(scores); !r.ok()) return r;
  return validate_groups(groups, n_groups);
}

ValidationResult validate(const LabelMatrix& labels,
                          const GroupVector& groups) {
  return validate(labels.data(), groups.assignment(), groups.n_groups());
}

LabelMatrix::LabelMatrix(Matrix scores) : data_(std::move(scores)) {
  if (auto r = validate_scores(data_); !r.ok()) throw ValidationError(r);
  for (std::size_t i = 0; i < data_.rows(); ++i) {
    double* row = data_.row_ptr(i);
    double row_sum = 0.0;
    for (std::size_t k = 0; k < data_.cols(); ++k) {
      row[k] = std::clamp(row[k], 0.0, 1.0);
      row_sum += row[k];
    }
    for (std::size_t k = 0; k < data_.cols(); ++k) row[k] /= row_sum;
  }
}

GroupVector::GroupVector(std::vector<std::int32_t> assignment,
                         std::int32_t n_groups)
    : assignment_(std::move(assignment)), n_groups_(n_groups) {
  if (auto r = validate_groups(assignment_, n_groups_); !r.ok()) {
    throw ValidationError(r);
  }
  sizes_.assign(static_cast<std::size_t>(n_groups_), 0);
  members_.assign(static_cast<std::size_t>(n_groups_), {});
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    const auto g = static_cast<std::size_t>(assignment_[i]);
    ++sizes_[g];
    members_[g].push_back(static_cast<std::uint32_t>(i));
  }
}

GroupVector GroupVector::infer(std::vector<std::int32_t> assignment) {
  std::int32_t max_id = -1;
  for (std::int32_t g : assignment) max_id = std::max(max_id, g);
  return GroupVector(std::move(assignment), max_id + 1);
}

std::size_t GroupVector::smallest_group_size() const {
  return *std::min_element(sizes_.begin(), sizes_.end());
}

void DebiasConfig::ensure_valid() const {
  if (!(epsilon >= 0.0)) throw InputError("config: epsilon must be >= 0");
  if (!(tau > 0.0)) throw InputError("config: tau must be > 0");
  if (!(lambda > 0.0)) throw InputError("config: lambda must be > 0");
  if (max_rounds < 1) throw InputError("config: max_rounds must be >= 1");
  if (!(residual_tol > 0.0) || !(outer_tol > 0.0) || !(inner_tol > 0.0)) {
    throw InputError("config: tolerances must be > 0");
  }
}

TabularDataset::TabularDataset(Matrix features_in, LabelMatrix labels_in,
                               GroupVector groups_in)
    : features(std::move(features_in)),
      labels(std::move(labels_in)),
      groups(std::move(groups_in)) {
  if (features.rows() != labels.n_examples() ||
      groups.size() != labels.n_examples()) {
    throw ValidationError({ValidationCode::kLengthMismatch,
                           "features, labels, groups row counts differ"});
  }
}

LabelMatrix one_hot_encode(std::span<const std::int32_t> hard_labels,
                           std::int32_t n_classes) {
  Matrix m(hard_labels.size(), static_cast<std::size_t>(n_classes), 0.0);
  for (std::size_t i = 0; i < hard_labels.size(); ++i) {
    const std::int32_t c = hard_labels[i];
    if (c < 0 || c >= n_classes) {
      throw InputError("one_hot_encode: class id " + std::to_string(c) +
                       " outside [0, " + std::to_string(n_classes) + ")");
    }
    m(i, static_cast<std::size_t>(c)) = 1.0;
  }
  return LabelMatrix(std::move(m));
}

std::int32_t argmax_class(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < row.size(); ++k) {
    if (row[k] > row[best]) best = k;
  }
  return static_cast<std::int32_t>(best);
}

}  // namespace parityforge
