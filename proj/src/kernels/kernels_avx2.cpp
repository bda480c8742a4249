/*
 * Copyright (c) 2026, The webtab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <immintrin.h>

#include "kernels_impl.hpp"

// Compiled with -mavx2 only. FMA stays disabled so that every lane performs
// the same multiply-then-add sequence as the scalar reference.
namespace webtab::simd::detail {
namespace {

void add_i32_avx2(std::int32_t* dst, const std::int32_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi32(d, s));
  }
  for (; i < n; ++i) dst[i] += src[i];
}

void add_f64_avx2(double* dst, const double* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), _mm256_loadu_pd(src + i)));
  }
  for (; i < n; ++i) dst[i] += src[i];
}

void div_f64_avx2(double* dst, double divisor, std::size_t n) {
  const __m256d dv = _mm256_set1_pd(divisor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_div_pd(_mm256_loadu_pd(dst + i), dv));
  }
  for (; i < n; ++i) dst[i] /= divisor;
}

void squared_deviation_avx2(double* out, const double* v, const double* center,
                            std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(v + i), _mm256_loadu_pd(center + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(diff, diff));
  }
  for (; i < n; ++i) {
    const double diff = v[i] - center[i];
    out[i] = diff * diff;
  }
}

void accumulate_squared_deviation_avx2(double* acc, const double* v,
                                       const double* center, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(v + i), _mm256_loadu_pd(center + i));
    __m256d sq = _mm256_mul_pd(diff, diff);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), sq));
  }
  for (; i < n; ++i) {
    const double diff = v[i] - center[i];
    acc[i] += diff * diff;
  }
}

double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
  __m256d sum = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    sum = _mm256_add_pd(sum, _mm256_mul_pd(diff, diff));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, sum);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double diff = a[i] - b[i];
    total += diff * diff;
  }
  return total;
}

}  // namespace

const KernelTable kAvx2Table{
    "avx2",
    add_i32_avx2,
    add_f64_avx2,
    div_f64_avx2,
    squared_deviation_avx2,
    accumulate_squared_deviation_avx2,
    squared_distance_avx2,
};

}  // namespace webtab::simd::detail
