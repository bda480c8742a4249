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

#include "kernels_impl.hpp"

namespace webtab::simd::detail {

void add_i32_scalar(std::int32_t* dst, const std::int32_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void add_f64_scalar(double* dst, const double* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void div_f64_scalar(double* dst, double divisor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] /= divisor;
}

void squared_deviation_scalar(double* out, const double* v, const double* center,
                              std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = v[i] - center[i];
    out[i] = diff * diff;
  }
}

void accumulate_squared_deviation_scalar(double* acc, const double* v,
                                         const double* center, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = v[i] - center[i];
    acc[i] += diff * diff;
  }
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
  // Four interleaved partial sums, combined as (s0 + s1) + (s2 + s3), then
  // the tail. Mirrors the AVX2 lane layout.
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double diff = a[i + l] - b[i + l];
      s[l] += diff * diff;
    }
  }
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) {
    const double diff = a[i] - b[i];
    total += diff * diff;
  }
  return total;
}

const KernelTable kScalarTable{
    "scalar",
    add_i32_scalar,
    add_f64_scalar,
    div_f64_scalar,
    squared_deviation_scalar,
    accumulate_squared_deviation_scalar,
    squared_distance_scalar,
};

}  // namespace webtab::simd::detail
