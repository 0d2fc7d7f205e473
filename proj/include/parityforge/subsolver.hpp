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

#include <span>
#include <vector>

#include "parityforge/core.hpp"

// Exact solver for the per-class subproblem
//
//   minimize    (w/2) ||y||^2 - y . f       over y in [0,1]^N
//   subject to  a <= mean_s(y) <= a + eps   for every group s,
//
// with a common anchor a in [0,1]. The problem is jointly convex in (y, a);
// the partial minimum V(a) is convex, so the anchor is found by
// golden-section search and each group's optimum has the closed form
// y_i = clip((f_i - mu_s) / w, 0, 1) with the scalar shift mu_s found by
// bisection on the group mean.
namespace parityforge::subsolver {

struct ClassSubproblem {
  std::span<const double> scores;  // target scores f, unbounded reals
  const GroupVector& groups;
  double epsilon;      // >= 0
  double quad_weight;  // w = lambda + tau, > 0
};

struct SubproblemSolution {
  std::vector<double> values;       // in [0,1], original example order
  double anchor = 0.0;              // common interval base a in [0,1]
  std::vector<double> group_means;  // achieved mean per group
  double objective = 0.0;           // (w/2)||y||^2 - y . f
};

struct GroupSolution {
  std::vector<double> values;  // in [0,1]
  double mean = 0.0;
  double shift = 0.0;  // mu; 0 when the unconstrained clip is feasible
};

// Minimizes (w/2)||y||^2 - y . f over y in [0,1]^n with
// mean(y) in [lo, hi] intersected with [0,1]. Throws InputError when that
// intersection is empty. The bisection domain for the shift is
// [min(f) - w, max(f)], over which the achieved mean spans [1, 0]
// monotonically; it terminates when the mean is within inner_tol of the
// target boundary or the bracket is narrower than 1e-14.
GroupSolution solve_group(std::span<const double> scores_in_group, double lo,
                          double hi, double quad_weight, double inner_tol);

SubproblemSolution solve_class(const ClassSubproblem& problem,
                               double outer_tol, double inner_tol);

// V(a): the optimal inner value at a fixed anchor. Exposed so convexity of
// the anchor search objective can be checked directly.
double anchor_objective(const ClassSubproblem& problem, double anchor,
                        double inner_tol);

}  // namespace parityforge::subsolver
