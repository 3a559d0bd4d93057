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

// AVX2+FMA float32 kernels. Compiled with -mavx2 -mfma; only reached after
// the runtime CPU check in kernels.cc.

#include <immintrin.h>

#include "stgr/simd/kernels.h"

namespace stgr::simd {
namespace {

inline float HorizontalSum(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  lo = _mm_add_ps(lo, hi);
  __m128 shuf = _mm_movehdup_ps(lo);
  __m128 sums = _mm_add_ps(lo, shuf);
  shuf = _mm_movehl_ps(shuf, sums);
  sums = _mm_add_ss(sums, shuf);
  return _mm_cvtss_f32(sums);
}

float Dot(const float* a, const float* b, std::size_t n) {
  __m256 acc0 = _mm256_setzero_ps();
  __m256 acc1 = _mm256_setzero_ps();
  __m256 acc2 = _mm256_setzero_ps();
  __m256 acc3 = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
    acc1 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 8),
                           _mm256_loadu_ps(b + i + 8), acc1);
    acc2 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 16),
                           _mm256_loadu_ps(b + i + 16), acc2);
    acc3 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 24),
                           _mm256_loadu_ps(b + i + 24), acc3);
  }
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
  }
  acc0 = _mm256_add_ps(_mm256_add_ps(acc0, acc1), _mm256_add_ps(acc2, acc3));
  float s = HorizontalSum(acc0);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void Axpy(float alpha, const float* x, float* y, std::size_t n) {
  const __m256 va = _mm256_set1_ps(alpha);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(y + i, _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i),
                                            _mm256_loadu_ps(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

// One output row: y[0..m) = sum_p x[p] * w[p, 0..m), 32 columns per block
// kept in registers across the whole reduction.
void MatMulRow(const float* x, const float* w, float* y, std::size_t k,
               std::size_t m) {
  std::size_t j = 0;
  for (; j + 32 <= m; j += 32) {
    __m256 a0 = _mm256_setzero_ps();
    __m256 a1 = _mm256_setzero_ps();
    __m256 a2 = _mm256_setzero_ps();
    __m256 a3 = _mm256_setzero_ps();
    const float* wp = w + j;
    for (std::size_t p = 0; p < k; ++p, wp += m) {
      const __m256 b = _mm256_set1_ps(x[p]);
      a0 = _mm256_fmadd_ps(b, _mm256_loadu_ps(wp), a0);
      a1 = _mm256_fmadd_ps(b, _mm256_loadu_ps(wp + 8), a1);
      a2 = _mm256_fmadd_ps(b, _mm256_loadu_ps(wp + 16), a2);
      a3 = _mm256_fmadd_ps(b, _mm256_loadu_ps(wp + 24), a3);
    }
    _mm256_storeu_ps(y + j, a0);
    _mm256_storeu_ps(y + j + 8, a1);
    _mm256_storeu_ps(y + j + 16, a2);
    _mm256_storeu_ps(y + j + 24, a3);
  }
  for (; j + 8 <= m; j += 8) {
    __m256 a0 = _mm256_setzero_ps();
    const float* wp = w + j;
    for (std::size_t p = 0; p < k; ++p, wp += m) {
      a0 = _mm256_fmadd_ps(_mm256_set1_ps(x[p]), _mm256_loadu_ps(wp), a0);
    }
    _mm256_storeu_ps(y + j, a0);
  }
  for (; j < m; ++j) {
    float s = 0.0f;
    for (std::size_t p = 0; p < k; ++p) s += x[p] * w[p * m + j];
    y[j] = s;
  }
}

void MatMul(const float* x, const float* w, float* y, std::size_t n,
            std::size_t k, std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) MatMulRow(x + i * k, w, y + i * m, k, m);
}

void MatMulNtAcc(const float* dy, const float* w, float* dx, std::size_t n,
                 std::size_t k, std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    const float* dyi = dy + i * m;
    float* dxi = dx + i * k;
    for (std::size_t p = 0; p < k; ++p) dxi[p] += Dot(dyi, w + p * m, m);
  }
}

void MatMulTnAcc(const float* x, const float* dy, float* dw, std::size_t n,
                 std::size_t k, std::size_t m) {
  for (std::size_t p = 0; p < k; ++p) {
    float* dwp = dw + p * m;
    std::size_t j = 0;
    for (; j + 32 <= m; j += 32) {
      __m256 a0 = _mm256_loadu_ps(dwp + j);
      __m256 a1 = _mm256_loadu_ps(dwp + j + 8);
      __m256 a2 = _mm256_loadu_ps(dwp + j + 16);
      __m256 a3 = _mm256_loadu_ps(dwp + j + 24);
      for (std::size_t i = 0; i < n; ++i) {
        const float xv = x[i * k + p];
        if (xv == 0.0f) continue;
        const __m256 b = _mm256_set1_ps(xv);
        const float* d = dy + i * m + j;
        a0 = _mm256_fmadd_ps(b, _mm256_loadu_ps(d), a0);
        a1 = _mm256_fmadd_ps(b, _mm256_loadu_ps(d + 8), a1);
        a2 = _mm256_fmadd_ps(b, _mm256_loadu_ps(d + 16), a2);
        a3 = _mm256_fmadd_ps(b, _mm256_loadu_ps(d + 24), a3);
      }
      _mm256_storeu_ps(dwp + j, a0);
      _mm256_storeu_ps(dwp + j + 8, a1);
      _mm256_storeu_ps(dwp + j + 16, a2);
      _mm256_storeu_ps(dwp + j + 24, a3);
    }
    for (; j < m; ++j) {
      float s = dwp[j];
      for (std::size_t i = 0; i < n; ++i) s += x[i * k + p] * dy[i * m + j];
      dwp[j] = s;
    }
  }
}

const KernelTable kAvx2Table = {
    Isa::kAvx2, "avx2", &Dot, &Axpy, &MatMul, &MatMulNtAcc, &MatMulTnAcc,
};

}  // namespace

const KernelTable& Avx2Table() { return kAvx2Table; }

}  // namespace stgr::simd
