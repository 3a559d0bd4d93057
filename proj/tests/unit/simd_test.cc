// Copyright 2026 The Spacetime-GR Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <gtest/gtest.h>

#include "stgr/simd/kernels.h"
#include "stgr/simd/reference.h"

namespace stgr::simd {
namespace {

std::vector<float> Random(std::size_t n, std::mt19937& rng) {
  std::normal_distribution<float> d(0.0f, 1.0f);
  std::vector<float> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

void ExpectClose(const std::vector<float>& a, const std::vector<float>& b,
                 float tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i], b[i], tol * (1.0f + std::abs(b[i]))) << i;
  }
}

class KernelEquivalenceTest : public ::testing::TestWithParam<Isa> {};

TEST_P(KernelEquivalenceTest, DotAndAxpy) {
  const KernelTable& k = KernelsFor(GetParam());
  std::mt19937 rng(1);
  for (std::size_t n : {0u, 1u, 7u, 8u, 31u, 32u, 33u, 100u, 1000u}) {
    auto a = Random(n, rng), b = Random(n, rng);
    EXPECT_NEAR(k.dot(a.data(), b.data(), n), ref::Dot(a.data(), b.data(), n),
                1e-4 * (1 + n));
    auto y = b, y_ref = b;
    k.axpy(0.5f, a.data(), y.data(), n);
    ref::Axpy(0.5f, a.data(), y_ref.data(), n);
    ExpectClose(y, y_ref, 1e-6f);
  }
}

TEST_P(KernelEquivalenceTest, MatMulFamily) {
  const KernelTable& k = KernelsFor(GetParam());
  std::mt19937 rng(2);
  for (auto [n, kk, m] : {std::tuple<std::size_t, std::size_t, std::size_t>{1, 1, 1},
                          {3, 5, 7}, {4, 64, 64}, {5, 64, 128}, {2, 128, 33},
                          {7, 17, 300}}) {
    auto x = Random(n * kk, rng), w = Random(kk * m, rng), dy = Random(n * m, rng);
    std::vector<float> y(n * m), y_ref(n * m);
    k.matmul(x.data(), w.data(), y.data(), n, kk, m);
    ref::MatMul(x.data(), w.data(), y_ref.data(), n, kk, m);
    ExpectClose(y, y_ref, 1e-4f);

    std::vector<float> dx(n * kk, 0.25f), dx_ref(n * kk, 0.25f);
    k.matmul_nt_acc(dy.data(), w.data(), dx.data(), n, kk, m);
    ref::MatMulNtAcc(dy.data(), w.data(), dx_ref.data(), n, kk, m);
    ExpectClose(dx, dx_ref, 1e-4f);

    std::vector<float> dw(kk * m, -1.0f), dw_ref(kk * m, -1.0f);
    k.matmul_tn_acc(x.data(), dy.data(), dw.data(), n, kk, m);
    ref::MatMulTnAcc(x.data(), dy.data(), dw_ref.data(), n, kk, m);
    ExpectClose(dw, dw_ref, 1e-4f);
  }
}

INSTANTIATE_TEST_SUITE_P(AllIsas, KernelEquivalenceTest,
                         ::testing::ValuesIn(AvailableIsas()),
                         [](const auto& info) { return std::string(IsaName(info.param)); });

TEST(KernelDispatchTest, ScalarAlwaysAvailable) {
  EXPECT_TRUE(IsaAvailable(Isa::kScalar));
  EXPECT_EQ(KernelsFor(Isa::kScalar).isa, Isa::kScalar);
  const Isa before = Active().isa;
  SetActive(Isa::kScalar);
  EXPECT_EQ(Active().isa, Isa::kScalar);
  SetActive(before);
}

}  // namespace
}  // namespace stgr::simd
