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
#include "parityforge/r2b.hpp"

#include <algorithm>
#include <cmath>

#include "parityforge/kernels.hpp"
#include "parityforge/metrics.hpp"
#include "parityforge/subsolver.hpp"
#include "parityforge/threading.hpp"

namespace parityforge::r2b {

Matrix normalize_rows(const Matrix& m) {
  Matrix out = m;
  const std::size_t cols = m.cols();
  const double inv_cols = 1.0 / static_cast<double>(cols);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double* row = out.row_ptr(i);
    const double shift = (kernels::sum(row, cols) - 1.0) * inv_cols;
    for (std::size_t k = 0; k < cols; ++k) row[k] -= shift;
  }
  return out;
}

double objective_value(const Matrix& candidate, const LabelMatrix& labels,
                       double lambda) {
  if (candidate.rows() != labels.n_examples() ||
      candidate.cols() != labels.n_classes()) {
    throw InputError("objective_value: shape mismatch");
  }
  const std::size_t n = candidate.size();
  return 0.5 * lambda * kernels::dot(candidate.data(), candidate.data(), n) -
         kernels::dot(candidate.data(), labels.data().data(), n);
}

namespace {

// Clamp to [0, 1] and renormalize each row by its sum. Rows of the input sum
// to one, so at least one entry is >= 1/L and the divisor stays positive.
Matrix clamped_view(const Matrix& z) {
  Matrix out = z;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    double* row = out.row_ptr(i);
    double row_sum = 0.0;
    for (std::size_t k = 0; k < out.cols(); ++k) {
      row[k] = std::clamp(row[k], 0.0, 1.0);
      row_sum += row[k];
    }
    for (std::size_t k = 0; k < out.cols(); ++k) row[k] /= row_sum;
  }
  return out;
}

}  // namespace

DebiasResult debias(const LabelMatrix& labels, const GroupVector& groups,
                    const DebiasConfig& config, const RoundObserver& observer) {
  if (auto r = validate(labels, groups); !r.ok()) throw ValidationError(r);
  config.ensure_valid();

  const std::size_t n = labels.n_examples();
  const std::size_t n_classes = labels.n_classes();
  const std::size_t total = n * n_classes;
  const double quad_weight = config.lambda + config.tau;
  const double stop_threshold =
      config.residual_tol * std::sqrt(static_cast<double>(total));

  const Matrix& y = labels.data();
  Matrix z(n, n_classes, 0.0);
  Matrix u(n, n_classes, 0.0);
  Matrix h(n, n_classes, 0.0);
  Matrix f(n, n_classes, 0.0);
  Matrix z_old(n, n_classes, 0.0);
  Matrix repaired;

  DebiasReport report;
  report.config_echo = config;

  for (int round = 1; round <= config.max_rounds; ++round) {
    kernels::admm_blend(y.data(), z.data(), u.data(), f.data(), total,
                        config.tau);

    parallel_for(n_classes, [&](std::size_t k) {
      std::vector<double> column(n);
      for (std::size_t i = 0; i < n; ++i) column[i] = f(i, k);
      subsolver::ClassSubproblem problem{column, groups, config.epsilon,
                                         quad_weight};
      const subsolver::SubproblemSolution sol =
          subsolver::solve_class(problem, config.outer_tol, config.inner_tol);
      for (std::size_t i = 0; i < n; ++i) h(i, k) = sol.values[i];
    });

    z_old = z;
    for (std::size_t i = 0; i < total; ++i) z.data()[i] = h.data()[i] + u.data()[i];
    z = normalize_rows(z);

    const double primal =
        std::sqrt(kernels::sq_l2_dist(z.data(), h.data(), total));
    const double dual =
        std::sqrt(kernels::sq_l2_dist(z.data(), z_old.data(), total));
    for (std::size_t i = 0; i < total; ++i) {
      u.data()[i] += h.data()[i] - z.data()[i];
    }

    repaired = clamped_view(z);
    const double dp = metrics::multiclass_dp(repaired, groups);
    const double objective = objective_value(repaired, labels, config.lambda);

    if (!std::isfinite(primal) || !std::isfinite(dual) ||
        !std::isfinite(objective)) {
      throw NumericalError("debias: non-finite value in round " +
                               std::to_string(round),
                           round);
    }

    report.rounds_run = round;
    report.dp_trace.push_back(dp);
    report.primal_trace.push_back(primal);
    report.dual_trace.push_back(dual);
    report.objective_trace.push_back(objective);

    if (observer) {
      observer(AdmmState{h, z, u, round, primal, dual});
    }

    if (primal + dual <= stop_threshold) break;
  }

  double max_adjust = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    max_adjust = std::max(max_adjust,
                          std::abs(repaired.data()[i] - z.data()[i]));
  }
  report.max_clamp_adjustment = max_adjust;
  report.final_dp = report.dp_trace.back();

  return {LabelMatrix(std::move(repaired)), std::move(report)};
}

}  // namespace parityforge::r2b
