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
#include "parityforge/subsolver.hpp"

#include <algorithm>
#include <cmath>

#include "parityforge/kernels.hpp"

namespace parityforge::subsolver {

namespace {

constexpr double kBracketFloor = 1e-14;
constexpr int kMaxBisectionSteps = 200;

struct ShiftResult {
  double shift;
  double mean;
};

// Finds mu such that mean(clip((f - mu)/w)) hits `target`, assuming the
// unconstrained mean (mu = 0) lies strictly on the far side. The mean is
// continuous and nonincreasing in mu, spanning [1, 0] over the bracket.
ShiftResult bisect_shift(const double* f, std::size_t n, double min_f,
                         double max_f, double quad_weight, double inv_w,
                         double target, double unconstrained_mean,
                         double inner_tol) {
  const double inv_n = 1.0 / static_cast<double>(n);
  // The unconstrained mean tightens one side of the bracket.
  double lo = min_f - quad_weight;
  double hi = max_f;
  if (unconstrained_mean > target) {
    lo = 0.0;
  } else {
    hi = 0.0;
  }
  double mid = 0.5 * (lo + hi);
  double mean = kernels::clip_shift_sum(f, n, mid, inv_w) * inv_n;
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    if (std::abs(mean - target) <= inner_tol || hi - lo <= kBracketFloor) break;
    if (mean > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    mean = kernels::clip_shift_sum(f, n, mid, inv_w) * inv_n;
  }
  return {mid, mean};
}

struct GroupView {
  const double* f;
  std::size_t n;
  double min_f;
  double max_f;
  double unconstrained_mean;
};

// Shift for one group at a target interval [lo, hi]; mu = 0 when the
// unconstrained mean is already inside.
ShiftResult group_shift(const GroupView& g, double lo, double hi,
                        double quad_weight, double inv_w, double inner_tol) {
  if (g.unconstrained_mean >= lo && g.unconstrained_mean <= hi) {
    return {0.0, g.unconstrained_mean};
  }
  const double target = g.unconstrained_mean < lo ? lo : hi;
  return bisect_shift(g.f, g.n, g.min_f, g.max_f, quad_weight, inv_w, target,
                      g.unconstrained_mean, inner_tol);
}

double group_objective(const GroupView& g, double shift, double inv_w,
                       double quad_weight) {
  const auto m = kernels::clip_shift_moments(g.f, g.n, shift, inv_w);
  return 0.5 * quad_weight * m.sum_sq - m.dot_f;
}

// Per-class solver context: scores regrouped contiguously per group.
struct ClassContext {
  std::vector<double> f;              // group-contiguous copy of the scores
  std::vector<std::size_t> offsets;   // group s spans [offsets[s], offsets[s+1])
  std::vector<GroupView> views;
  double quad_weight;
  double inv_w;
  double epsilon;

  ClassContext(const ClassSubproblem& p) : quad_weight(p.quad_weight) {
    const auto& groups = p.groups;
    const auto n_groups = static_cast<std::size_t>(groups.n_groups());
    f.resize(p.scores.size());
    offsets.resize(n_groups + 1, 0);
    inv_w = 1.0 / quad_weight;
    epsilon = p.epsilon;
    std::size_t pos = 0;
    for (std::size_t s = 0; s < n_groups; ++s) {
      offsets[s] = pos;
      for (std::uint32_t i : groups.members()[s]) f[pos++] = p.scores[i];
    }
    offsets[n_groups] = pos;
    views.reserve(n_groups);
    for (std::size_t s = 0; s < n_groups; ++s) {
      const double* base = f.data() + offsets[s];
      const std::size_t n = offsets[s + 1] - offsets[s];
      const auto [min_it, max_it] = std::minmax_element(base, base + n);
      const double mean =
          kernels::clip_shift_sum(base, n, 0.0, inv_w) / static_cast<double>(n);
      views.push_back({base, n, *min_it, *max_it, mean});
    }
  }

  // V(anchor): sum of per-group optima with means in [anchor, anchor+eps].
  double value_at(double anchor, double inner_tol) const {
    const double lo = anchor;
    const double hi = std::min(anchor + epsilon, 1.0);
    double total = 0.0;
    for (const GroupView& g : views) {
      const ShiftResult r =
          group_shift(g, lo, hi, quad_weight, inv_w, inner_tol);
      total += group_objective(g, r.shift, inv_w, quad_weight);
    }
    return total;
  }
};

}  // namespace

GroupSolution solve_group(std::span<const double> scores_in_group, double lo,
                          double hi, double quad_weight, double inner_tol) {
  if (scores_in_group.empty()) throw InputError("solve_group: empty group");
  if (!(quad_weight > 0.0)) throw InputError("solve_group: quad_weight <= 0");
  if (lo > hi) throw InputError("solve_group: lo > hi");
  const double lo_eff = std::max(lo, 0.0);
  const double hi_eff = std::min(hi, 1.0);
  if (lo_eff > hi_eff) {
    throw InputError("solve_group: target interval does not intersect [0,1]");
  }

  const double* f = scores_in_group.data();
  const std::size_t n = scores_in_group.size();
  const double inv_w = 1.0 / quad_weight;
  const auto [min_it, max_it] = std::minmax_element(f, f + n);
  const double m0 =
      kernels::clip_shift_sum(f, n, 0.0, inv_w) / static_cast<double>(n);

  GroupView view{f, n, *min_it, *max_it, m0};
  const ShiftResult r =
      group_shift(view, lo_eff, hi_eff, quad_weight, inv_w, inner_tol);

  GroupSolution out;
  out.values.resize(n);
  kernels::clip_shift_store(f, out.values.data(), n, r.shift, inv_w);
  out.mean = r.mean;
  out.shift = r.shift;
  return out;
}

double anchor_objective(const ClassSubproblem& problem, double anchor,
                        double inner_tol) {
  return ClassContext(problem).value_at(anchor, inner_tol);
}

SubproblemSolution solve_class(const ClassSubproblem& problem,
                               double outer_tol, double inner_tol) {
  if (problem.scores.size() != problem.groups.size()) {
    throw InputError("solve_class: scores/groups length mismatch");
  }
  if (!(problem.quad_weight > 0.0) || !(problem.epsilon >= 0.0)) {
    throw InputError("solve_class: invalid epsilon or quad_weight");
  }

  const ClassContext ctx(problem);
  const auto n_groups = ctx.views.size();

  double anchor;
  double spread_lo = ctx.views[0].unconstrained_mean;
  double spread_hi = spread_lo;
  for (const GroupView& g : ctx.views) {
    spread_lo = std::min(spread_lo, g.unconstrained_mean);
    spread_hi = std::max(spread_hi, g.unconstrained_mean);
  }

  if (spread_hi - spread_lo <= ctx.epsilon) {
    // The unconstrained clip is feasible, hence optimal.
    anchor = spread_lo;
  } else {
    // Golden-section search for the convex V(a) on [0, 1].
    constexpr double kGolden = 0.6180339887498949;
    double a = 0.0, b = 1.0;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double v1 = ctx.value_at(x1, inner_tol);
    double v2 = ctx.value_at(x2, inner_tol);
    while (b - a > outer_tol) {
      if (v1 <= v2) {
        b = x2;
        x2 = x1;
        v2 = v1;
        x1 = b - kGolden * (b - a);
        v1 = ctx.value_at(x1, inner_tol);
      } else {
        a = x1;
        x1 = x2;
        v1 = v2;
        x2 = a + kGolden * (b - a);
        v2 = ctx.value_at(x2, inner_tol);
      }
    }
    anchor = 0.5 * (a + b);
  }

  const double lo = anchor;
  const double hi = std::min(anchor + ctx.epsilon, 1.0);

  SubproblemSolution out;
  out.anchor = anchor;
  out.values.resize(problem.scores.size());
  out.group_means.resize(n_groups);
  out.objective = 0.0;

  std::vector<double> group_values;
  for (std::size_t s = 0; s < n_groups; ++s) {
    const GroupView& g = ctx.views[s];
    const ShiftResult r =
        group_shift(g, lo, hi, ctx.quad_weight, ctx.inv_w, inner_tol);
    group_values.resize(g.n);
    kernels::clip_shift_store(g.f, group_values.data(), g.n, r.shift,
                              ctx.inv_w);
    const auto& members = problem.groups.members()[s];
    for (std::size_t j = 0; j < g.n; ++j) {
      out.values[members[j]] = group_values[j];
    }
    out.group_means[s] = r.mean;
    out.objective += group_objective(g, r.shift, ctx.inv_w, ctx.quad_weight);
  }
  return out;
}

}  // namespace parityforge::subsolver
