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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace parityforge {

// Dense row-major matrix of doubles. Plain storage; all numeric work happens
// in the kernels and the modules built on top.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
  std::span<const double> row(std::size_t i) const {
    return {row_ptr(i), cols_};
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or preconditions (out-of-range class id, k > N, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or degenerate intermediates inside an algorithm.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, int round)
      : Error(what), round_(round) {}
  int round() const { return round_; }

 private:
  int round_;
};

// A train/test split left some group empty.
class SplitError : public Error {
 public:
  using Error::Error;
};

enum class ValidationCode {
  kOk,
  kNoExamples,
  kTooFewClasses,
  kNegativeEntry,
  kEntryAboveOne,
  kRowSumViolation,
  kLengthMismatch,
  kTooFewGroups,
  kGroupIdOutOfRange,
  kEmptyGroup,
};

struct ValidationResult {
  ValidationCode code = ValidationCode::kOk;
  std::string detail;
  bool ok() const { return code == ValidationCode::kOk; }
};

const char* validation_code_name(ValidationCode code);

class ValidationError : public Error {
 public:
  explicit ValidationError(const ValidationResult& result)
      : Error(std::string(validation_code_name(result.code)) + ": " +
              result.detail),
        code_(result.code) {}
  ValidationCode code() const { return code_; }

 private:
  ValidationCode code_;
};

// Entry tolerance accepted on ingestion; entries are clamped into [0, 1].
inline constexpr double kEntryTolerance = 1e-9;
// Row-sum tolerance accepted on ingestion; rows are renormalized exactly.
inline constexpr double kRowSumTolerance = 1e-6;

// N x L matrix of per-example class probability scores. Rows are
// distributions: construction clamps entries within kEntryTolerance into
// [0, 1] and divides each row by its sum (accepted within kRowSumTolerance),
// so a held LabelMatrix always satisfies the invariants exactly.
// Immutable after construction.
class LabelMatrix {
 public:
  explicit LabelMatrix(Matrix scores);

  std::size_t n_examples() const { return data_.rows(); }
  std::size_t n_classes() const { return data_.cols(); }
  const Matrix& data() const { return data_; }
  std::span<const double> row(std::size_t i) const { return data_.row(i); }
  double operator()(std::size_t i, std::size_t k) const { return data_(i, k); }

  bool operator==(const LabelMatrix& other) const = default;

 private:
  Matrix data_;
};

// Length-N assignment of examples to sensitive groups 0..R-1. Every group
// must be nonempty and R >= 2. Immutable after construction.
class GroupVector {
 public:
  GroupVector(std::vector<std::int32_t> assignment, std::int32_t n_groups);
  // n_groups inferred as max id + 1.
  static GroupVector infer(std::vector<std::int32_t> assignment);

  std::size_t size() const { return assignment_.size(); }
  std::int32_t n_groups() const { return n_groups_; }
  std::int32_t operator[](std::size_t i) const { return assignment_[i]; }
  const std::vector<std::int32_t>& assignment() const { return assignment_; }
  const std::vector<std::size_t>& group_sizes() const { return sizes_; }
  // Example indices per group, ascending within each group.
  const std::vector<std::vector<std::uint32_t>>& members() const {
    return members_;
  }
  std::size_t smallest_group_size() const;

  bool operator==(const GroupVector& other) const {
    return assignment_ == other.assignment_ && n_groups_ == other.n_groups_;
  }

 private:
  std::vector<std::int32_t> assignment_;
  std::int32_t n_groups_ = 0;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::uint32_t>> members_;
};

struct DebiasConfig {
  double epsilon = 0.0;      // demographic parity tolerance, >= 0
  double tau = 0.5;          // ADMM step size, > 0
  double lambda = 1.0;       // regularization weight, > 0
  int max_rounds = 100;
  double residual_tol = 1e-6;  // scaled by sqrt(N*L) in the stopping rule
  double outer_tol = 1e-9;     // golden-section bracket width on the anchor
  double inner_tol = 1e-10;    // bisection tolerance on a group mean

  // Throws InputError when a field is out of range.
  void ensure_valid() const;
};

struct TabularDataset {
  Matrix features;  // N x d
  LabelMatrix labels;
  GroupVector groups;

  TabularDataset(Matrix features, LabelMatrix labels, GroupVector groups);
  std::size_t n_examples() const { return labels.n_examples(); }
};

// Validation of raw inputs (before LabelMatrix/GroupVector enforce the
// invariants themselves). Checks run in order: length match, score matrix
// shape and entries, row sums, then group structure.
ValidationResult validate_scores(const Matrix& scores);
ValidationResult validate(const Matrix& scores,
                          std::span<const std::int32_t> groups,
                          std::int32_t n_groups);
ValidationResult validate(const LabelMatrix& labels, const GroupVector& groups);

// Row i gets 1 at column hard_labels[i]. Throws InputError on a class id
// outside [0, n_classes).
LabelMatrix one_hot_encode(std::span<const std::int32_t> hard_labels,
                           std::int32_t n_classes);

// Argmax with ties broken by the smallest class index.
std::int32_t argmax_class(std::span<const double> row);

}  // namespace parityforge
