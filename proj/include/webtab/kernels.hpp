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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Dense arithmetic inner loops. Every kernel has a scalar reference and,
// where the target supports it, an AVX2 variant picked once at runtime.
//
// All variants produce bit-identical results: elementwise kernels perform
// the same IEEE operations per lane, and the one reduction
// (squared_distance) uses a fixed 4-lane partial-sum order in both the
// scalar and vector code. Setting WEBTAB_SIMD=scalar in the environment
// forces the scalar table.
namespace webtab::simd {

struct KernelTable {
  std::string_view name;
  // dst[i] += src[i]
  void (*add_i32)(std::int32_t* dst, const std::int32_t* src, std::size_t n);
  // dst[i] += src[i]
  void (*add_f64)(double* dst, const double* src, std::size_t n);
  // dst[i] /= divisor
  void (*div_f64)(double* dst, double divisor, std::size_t n);
  // out[i] = (v[i] - center[i])^2
  void (*squared_deviation)(double* out, const double* v, const double* center,
                            std::size_t n);
  // acc[i] += (v[i] - center[i])^2
  void (*accumulate_squared_deviation)(double* acc, const double* v,
                                       const double* center, std::size_t n);
  // sum_i (a[i] - b[i])^2
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();
// The table selected for this process.
const KernelTable& active_kernels();

void add(std::span<std::int32_t> dst, std::span<const std::int32_t> src);
void add(std::span<double> dst, std::span<const double> src);
void divide(std::span<double> dst, double divisor);
void squared_deviation(std::span<double> out, std::span<const double> v,
                       std::span<const double> center);
void accumulate_squared_deviation(std::span<double> acc,
                                  std::span<const double> v,
                                  std::span<const double> center);
double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace webtab::simd
