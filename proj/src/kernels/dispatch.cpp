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

#include <cassert>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace webtab::simd {

const KernelTable& scalar_kernels() { return detail::kScalarTable; }

const KernelTable* avx2_kernels() {
#if defined(WEBTAB_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& table = []() -> const KernelTable& {
    const char* forced = std::getenv("WEBTAB_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") {
      return scalar_kernels();
    }
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return table;
}

void add(std::span<std::int32_t> dst, std::span<const std::int32_t> src) {
  assert(dst.size() == src.size());
  active_kernels().add_i32(dst.data(), src.data(), dst.size());
}

void add(std::span<double> dst, std::span<const double> src) {
  assert(dst.size() == src.size());
  active_kernels().add_f64(dst.data(), src.data(), dst.size());
}

void divide(std::span<double> dst, double divisor) {
  active_kernels().div_f64(dst.data(), divisor, dst.size());
}

void squared_deviation(std::span<double> out, std::span<const double> v,
                       std::span<const double> center) {
  assert(out.size() == v.size() && v.size() == center.size());
  active_kernels().squared_deviation(out.data(), v.data(), center.data(), out.size());
}

void accumulate_squared_deviation(std::span<double> acc, std::span<const double> v,
                                  std::span<const double> center) {
  assert(acc.size() == v.size() && v.size() == center.size());
  active_kernels().accumulate_squared_deviation(acc.data(), v.data(), center.data(),
                                                acc.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active_kernels().squared_distance(a.data(), b.data(), a.size());
}

}  // namespace webtab::simd
