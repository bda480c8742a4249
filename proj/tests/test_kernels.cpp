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

#include <gtest/gtest.h>

#include <cstring>
#include <vector>

#include "webtab/kernels.hpp"
#include "webtab/rng.hpp"

namespace simd = webtab::simd;

namespace {

std::vector<double> random_doubles(webtab::Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = (rng.unit() - 0.5) * 1e4;
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    avx2_ = simd::avx2_kernels();
    if (!avx2_) GTEST_SKIP() << "AVX2 variant unavailable on this machine";
  }
  const simd::KernelTable& scalar_ = simd::scalar_kernels();
  const simd::KernelTable* avx2_ = nullptr;
};

}  // namespace

TEST(Kernels, ActiveTableIsKnown) {
  const auto& active = simd::active_kernels();
  EXPECT_TRUE(active.name == "scalar" || active.name == "avx2");
}

TEST(Kernels, ScalarReferenceValues) {
  std::vector<std::int32_t> a = {1, 2, 3}, b = {10, -20, 30};
  simd::scalar_kernels().add_i32(a.data(), b.data(), a.size());
  EXPECT_EQ(a, (std::vector<std::int32_t>{11, -18, 33}));

  std::vector<double> v = {1.0, 4.0}, c = {2.0, 1.0}, acc = {1.0, 1.0};
  simd::scalar_kernels().accumulate_squared_deviation(acc.data(), v.data(), c.data(), 2);
  EXPECT_EQ(acc, (std::vector<double>{2.0, 10.0}));
  EXPECT_DOUBLE_EQ(simd::scalar_kernels().squared_distance(v.data(), c.data(), 2), 10.0);
}

TEST_F(KernelEquivalence, AddInt32) {
  webtab::Rng rng(1);
  for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 200u, 1001u}) {
    std::vector<std::int32_t> src(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      src[i] = static_cast<std::int32_t>(rng.below(2000)) - 1000;
      x[i] = static_cast<std::int32_t>(rng.below(2000)) - 1000;
    }
    auto y = x;
    scalar_.add_i32(x.data(), src.data(), n);
    avx2_->add_i32(y.data(), src.data(), n);
    EXPECT_EQ(x, y) << n;
  }
}

TEST_F(KernelEquivalence, FloatingKernelsAreBitIdentical) {
  webtab::Rng rng(2);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 15u, 16u, 17u, 200u, 1200u}) {
    const auto a = random_doubles(rng, n), b = random_doubles(rng, n);

    auto s = a, v = a;
    scalar_.add_f64(s.data(), b.data(), n);
    avx2_->add_f64(v.data(), b.data(), n);
    EXPECT_TRUE(same_bits(s, v)) << "add " << n;

    s = a, v = a;
    scalar_.div_f64(s.data(), 7.0, n);
    avx2_->div_f64(v.data(), 7.0, n);
    EXPECT_TRUE(same_bits(s, v)) << "div " << n;

    std::vector<double> so(n), vo(n);
    scalar_.squared_deviation(so.data(), a.data(), b.data(), n);
    avx2_->squared_deviation(vo.data(), a.data(), b.data(), n);
    EXPECT_TRUE(same_bits(so, vo)) << "sqdev " << n;

    s = b, v = b;
    scalar_.accumulate_squared_deviation(s.data(), a.data(), b.data(), n);
    avx2_->accumulate_squared_deviation(v.data(), a.data(), b.data(), n);
    EXPECT_TRUE(same_bits(s, v)) << "acc " << n;

    const double ds = scalar_.squared_distance(a.data(), b.data(), n);
    const double dv = avx2_->squared_distance(a.data(), b.data(), n);
    EXPECT_EQ(std::memcmp(&ds, &dv, sizeof ds), 0) << "dist " << n;
  }
}

TEST(Kernels, WrappersMatchScalarReference) {
  webtab::Rng rng(3);
  const auto a = random_doubles(rng, 37), b = random_doubles(rng, 37);
  const double ref = simd::scalar_kernels().squared_distance(a.data(), b.data(), a.size());
  EXPECT_EQ(simd::squared_distance(a, b), ref);
  std::vector<double> acc(37, 0.0), expect(37, 0.0);
  simd::accumulate_squared_deviation(acc, a, b);
  simd::scalar_kernels().accumulate_squared_deviation(expect.data(), a.data(), b.data(), 37);
  EXPECT_TRUE(same_bits(acc, expect));
}
