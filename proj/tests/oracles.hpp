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

// Independent reference implementations used only by tests. Everything here
// deliberately avoids the library's solver path: projections instead of
// shifts-and-bisection, exhaustive scans instead of partial sorts.

#include <span>
#include <vector>

#include "parityforge/core.hpp"
#include "parityforge/rng.hpp"

namespace parityforge::testing {

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::span<const double> v);

// Exact projection of each class column onto
// {max_s mean_s - min_s mean_s <= eps}: per class, the minimal-norm change
// is a uniform per-group shift, found by clipping the group means to an
// interval [b, b+eps] whose base minimizes the weighted squared movement.
void project_dp_set(Matrix& x, const GroupVector& groups, double eps);

// Dykstra's alternating projections between the product of row simplices and
// the DP constraint set.
Matrix dykstra_project(const Matrix& x, const GroupVector& groups, double eps,
                       int sweeps);

// sum over rows of (lambda/2)||c||^2 - c . y, plain loops.
double plain_objective(const Matrix& candidate, const Matrix& y,
                       double lambda);

struct PgOracleResult {
  Matrix solution;
  double objective;
};

// Projected gradient on the debiasing problem: minimize
// (lambda/2)||X||^2 - <X, Y> over row-stochastic X with multiclass DP <= eps.
// Each projection runs Dykstra between the simplex rows and the DP set.
PgOracleResult pg_oracle(const Matrix& y, const GroupVector& groups,
                         double eps, double lambda, int pg_steps,
                         int dykstra_sweeps);

// Two-level grid search for the per-class subproblem: anchors a on a grid
// over [0, 1], per-group shifts mu on a (virtual) grid over
// [min f - w, max f]. Returns the best total objective found.
double grid_oracle_class_objective(std::span<const double> f,
                                   const GroupVector& groups, double eps,
                                   double quad_weight, int anchor_points,
                                   long shift_points);

// Projected gradient for the one-group problem: minimize
// (w/2)||y||^2 - y . f over [0,1]^n with mean(y) in [lo, hi]. The projection
// alternates box clipping and mean-slab shifts with Dykstra corrections.
std::vector<double> pg_oracle_group(std::span<const double> f, double lo,
                                    double hi, double quad_weight, int steps,
                                    int dykstra_sweeps);

// Exhaustive kNN: full stable sort on distance (stability supplies the
// smallest-index tie rule), plain-loop distances and label averaging.
Matrix knn_bruteforce(const Matrix& train_features, const Matrix& train_labels,
                      int k, const Matrix& queries);

// Random row-stochastic matrix mixing soft rows with one-hot rows.
Matrix random_label_rows(Rng& rng, std::size_t n, std::size_t n_classes,
                         double one_hot_fraction = 0.3);

// Random assignment with every group guaranteed nonempty (requires n >= r).
GroupVector random_groups(Rng& rng, std::size_t n, std::int32_t r);

}  // namespace parityforge::testing
