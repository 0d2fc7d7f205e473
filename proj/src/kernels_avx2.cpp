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

// AVX2/FMA variants of the scalar kernels. This translation unit is compiled
// with -mavx2 -mfma; callers must check cpu_has_avx2() before dispatching
// here. Elementwise kernels (clip_shift_store, admm_blend) produce bitwise
// identical results to the scalar reference; reductions differ only in
// summation order.
#include "parityforge/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace parityforge::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline __m256d clip01(__m256d v) {
  return _mm256_min_pd(_mm256_set1_pd(1.0),
                       _mm256_max_pd(_mm256_setzero_pd(), v));
}

}  // namespace

double sum(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += x[i];
  return total;
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double sq_l2_dist(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4),
                               _mm256_loadu_pd(y + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc0 = _mm256_fmadd_pd(d, d, acc0);
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = x[i] - y[i];
    total += d * d;
  }
  return total;
}

double clip_shift_sum(const double* f, std::size_t n, double mu,
                      double inv_w) {
  const __m256d vmu = _mm256_set1_pd(mu);
  const __m256d vw = _mm256_set1_pd(inv_w);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d v0 = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(f + i), vmu), vw);
    __m256d v1 =
        _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(f + i + 4), vmu), vw);
    acc0 = _mm256_add_pd(acc0, clip01(v0));
    acc1 = _mm256_add_pd(acc1, clip01(v1));
  }
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(f + i), vmu), vw);
    acc0 = _mm256_add_pd(acc0, clip01(v));
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    double v = (f[i] - mu) * inv_w;
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    total += v;
  }
  return total;
}

void clip_shift_store(const double* f, double* y, std::size_t n, double mu,
                      double inv_w) {
  const __m256d vmu = _mm256_set1_pd(mu);
  const __m256d vw = _mm256_set1_pd(inv_w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(f + i), vmu), vw);
    _mm256_storeu_pd(y + i, clip01(v));
  }
  for (; i < n; ++i) {
    double v = (f[i] - mu) * inv_w;
    y[i] = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  }
}

ClipMoments clip_shift_moments(const double* f, std::size_t n, double mu,
                               double inv_w) {
  const __m256d vmu = _mm256_set1_pd(mu);
  const __m256d vw = _mm256_set1_pd(inv_w);
  __m256d s = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd();
  __m256d sf = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d fv = _mm256_loadu_pd(f + i);
    __m256d v = clip01(_mm256_mul_pd(_mm256_sub_pd(fv, vmu), vw));
    s = _mm256_add_pd(s, v);
    s2 = _mm256_fmadd_pd(v, v, s2);
    sf = _mm256_fmadd_pd(v, fv, sf);
  }
  ClipMoments m{hsum(s), hsum(s2), hsum(sf)};
  for (; i < n; ++i) {
    double v = (f[i] - mu) * inv_w;
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    m.sum += v;
    m.sum_sq += v * v;
    m.dot_f += v * f[i];
  }
  return m;
}

void admm_blend(const double* y, const double* z, const double* u, double* out,
                std::size_t n, double tau) {
  // mul + add (no FMA) so the result is bitwise equal to the scalar path.
  const __m256d vtau = _mm256_set1_pd(tau);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(z + i), _mm256_loadu_pd(u + i));
    _mm256_storeu_pd(out + i,
                     _mm256_add_pd(_mm256_loadu_pd(y + i),
                                   _mm256_mul_pd(vtau, d)));
  }
  for (; i < n; ++i) out[i] = y[i] + tau * (z[i] - u[i]);
}

}  // namespace parityforge::kernels::avx2

#endif  // x86-64
