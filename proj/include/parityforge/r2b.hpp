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

#include <functional>
#include <vector>

#include "parityforge/core.hpp"

// ADMM consensus debiasing: each round debiases every class column in
// parallel under the group-mean range constraint, projects the aggregate
// back onto row-sum-one matrices, and updates the scaled duals, until the
// residuals vanish or the round limit is reached.
namespace parityforge::r2b {

// Per-round view handed to an observer. H holds the unnormalized per-class
// solutions, Z the normalized consensus scores, U the scaled duals.
struct AdmmState {
  const Matrix& H;
  const Matrix& Z;
  const Matrix& U;
  int round;                // 1-based
  double primal_residual;   // ||Z - H||_F for the current round
  double dual_residual;     // ||Z_new - Z_old||_F
};

struct DebiasReport {
  int rounds_run = 0;
  std::vector<double> dp_trace;         // DP of the clamped view of Z per round
  std::vector<double> primal_trace;
  std::vector<double> dual_trace;
  std::vector<double> objective_trace;  // objective of the clamped view
  double final_dp = 0.0;
  double max_clamp_adjustment = 0.0;    // largest |entry| change of the final repair
  DebiasConfig config_echo;
};

struct DebiasResult {
  LabelMatrix labels;
  DebiasReport report;
};

using RoundObserver = std::function<void(const AdmmState&)>;

// Euclidean projection onto {rows sum to 1}: M - (1/L)(M 1 - 1) 1^T.
// Entries may leave [0, 1].
Matrix normalize_rows(const Matrix& m);

// sum over rows of (lambda/2)||c_row||^2 - c_row . y_row.
double objective_value(const Matrix& candidate, const LabelMatrix& labels,
                       double lambda);

// Runs the full consensus loop. The returned labels are the final consensus
// matrix clamped to [0, 1] and row-renormalized (at convergence the
// adjustment is ~0; the report records its largest entry). Throws
// ValidationError on invalid inputs and NumericalError (with the round
// index) if a non-finite value appears.
DebiasResult debias(const LabelMatrix& labels, const GroupVector& groups,
                    const DebiasConfig& config,
                    const RoundObserver& observer = {});

}  // namespace parityforge::r2b
