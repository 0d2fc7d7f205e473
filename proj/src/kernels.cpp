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
#include "parityforge/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace parityforge::kernels {

namespace scalar {

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sq_l2_dist(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

static inline double clip01(double v) {
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

double clip_shift_sum(const double* f, std::size_t n, double mu,
                      double inv_w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += clip01((f[i] - mu) * inv_w);
  return acc;
}

void clip_shift_store(const double* f, double* y, std::size_t n, double mu,
                      double inv_w) {
  for (std::size_t i = 0; i < n; ++i) y[i] = clip01((f[i] - mu) * inv_w);
}

ClipMoments clip_shift_moments(const double* f, std::size_t n, double mu,
                               double inv_w) {
  ClipMoments m{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = clip01((f[i] - mu) * inv_w);
    m.sum += v;
    m.sum_sq += v * v;
    m.dot_f += v * f[i];
  }
  return m;
}

void admm_blend(const double* y, const double* z, const double* u, double* out,
                std::size_t n, double tau) {
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + tau * (z[i] - u[i]);
}

}  // namespace scalar

bool cpu_has_avx2() {
#if defined(PARITYFORGE_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Backend detect_backend() {
  return cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void force_backend(Backend backend) {
  if (backend == Backend::kAvx2 && !cpu_has_avx2()) {
    throw std::runtime_error("kernels: AVX2 backend requested but unsupported");
  }
  g_backend.store(backend, std::memory_order_relaxed);
}

void reset_backend() { g_backend.store(detect_backend(), std::memory_order_relaxed); }

const char* backend_name(Backend backend) {
  return backend == Backend::kAvx2 ? "avx2" : "scalar";
}

#ifdef PARITYFORGE_HAVE_AVX2_KERNELS
#define PF_DISPATCH(fn, ...)                            \
  (active_backend() == Backend::kAvx2 ? avx2::fn(__VA_ARGS__) \
                                      : scalar::fn(__VA_ARGS__))
#else
#define PF_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double sum(const double* x, std::size_t n) { return PF_DISPATCH(sum, x, n); }

double dot(const double* x, const double* y, std::size_t n) {
  return PF_DISPATCH(dot, x, y, n);
}

double sq_l2_dist(const double* x, const double* y, std::size_t n) {
  return PF_DISPATCH(sq_l2_dist, x, y, n);
}

double clip_shift_sum(const double* f, std::size_t n, double mu,
                      double inv_w) {
  return PF_DISPATCH(clip_shift_sum, f, n, mu, inv_w);
}

void clip_shift_store(const double* f, double* y, std::size_t n, double mu,
                      double inv_w) {
  PF_DISPATCH(clip_shift_store, f, y, n, mu, inv_w);
}

ClipMoments clip_shift_moments(const double* f, std::size_t n, double mu,
                               double inv_w) {
  return PF_DISPATCH(clip_shift_moments, f, n, mu, inv_w);
}

void admm_blend(const double* y, const double* z, const double* u, double* out,
                std::size_t n, double tau) {
  PF_DISPATCH(admm_blend, y, z, u, out, n, tau);
}

#undef PF_DISPATCH

}  // namespace parityforge::kernels
