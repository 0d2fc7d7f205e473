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

#include <cstddef>

// Data-parallel inner loops shared by the solver, the metrics, and the kNN
// harness. Every kernel exists in a scalar reference form and, on x86-64
// with AVX2, a vectorized form. The top-level functions dispatch at runtime;
// the per-backend namespaces are exposed so the two can be tested for
// equivalence directly.
namespace parityforge::kernels {

enum class Backend { kScalar, kAvx2 };

// Backend detected from the CPU at first use. force_backend() overrides the
// choice (tests, benchmarks); forcing kAvx2 on a CPU without AVX2 throws.
Backend active_backend();
void force_backend(Backend backend);
void reset_backend();
bool cpu_has_avx2();
const char* backend_name(Backend backend);

// First and second moments of the clipped shifted vector
// y[i] = clip((f[i] - mu) * inv_w, 0, 1), plus its inner product with f.
struct ClipMoments {
  double sum;     // sum y[i]
  double sum_sq;  // sum y[i]^2
  double dot_f;   // sum y[i] * f[i]
};

double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
// sum (x[i] - y[i])^2
double sq_l2_dist(const double* x, const double* y, std::size_t n);
// sum clip((f[i] - mu) * inv_w, 0, 1)
double clip_shift_sum(const double* f, std::size_t n, double mu, double inv_w);
// y[i] = clip((f[i] - mu) * inv_w, 0, 1)
void clip_shift_store(const double* f, double* y, std::size_t n, double mu,
                      double inv_w);
ClipMoments clip_shift_moments(const double* f, std::size_t n, double mu,
                               double inv_w);
// out[i] = y[i] + tau * (z[i] - u[i])
void admm_blend(const double* y, const double* z, const double* u, double* out,
                std::size_t n, double tau);

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sq_l2_dist(const double* x, const double* y, std::size_t n);
double clip_shift_sum(const double* f, std::size_t n, double mu, double inv_w);
void clip_shift_store(const double* f, double* y, std::size_t n, double mu,
                      double inv_w);
ClipMoments clip_shift_moments(const double* f, std::size_t n, double mu,
                               double inv_w);
void admm_blend(const double* y, const double* z, const double* u, double* out,
                std::size_t n, double tau);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define PARITYFORGE_HAVE_AVX2_KERNELS 1
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sq_l2_dist(const double* x, const double* y, std::size_t n);
double clip_shift_sum(const double* f, std::size_t n, double mu, double inv_w);
void clip_shift_store(const double* f, double* y, std::size_t n, double mu,
                      double inv_w);
ClipMoments clip_shift_moments(const double* f, std::size_t n, double mu,
                               double inv_w);
void admm_blend(const double* y, const double* z, const double* u, double* out,
                std::size_t n, double tau);
}  // namespace avx2
#endif

}  // namespace parityforge::kernels
