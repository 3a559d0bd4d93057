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

#ifndef STGR_SIMD_REFERENCE_H_
#define STGR_SIMD_REFERENCE_H_

// Scalar reference kernels, templated so the float64 verification path uses
// the same loops as the float32 scalar table.

#include <cstddef>

namespace stgr::simd::ref {

template <typename T>
T Dot(const T* a, const T* b, std::size_t n) {
  T s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

template <typename T>
void Axpy(T alpha, const T* x, T* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
void MatMul(const T* x, const T* w, T* y, std::size_t n, std::size_t k,
            std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    T* yi = y + i * m;
    for (std::size_t j = 0; j < m; ++j) yi[j] = 0;
    const T* xi = x + i * k;
    for (std::size_t p = 0; p < k; ++p) Axpy(xi[p], w + p * m, yi, m);
  }
}

template <typename T>
void MatMulNtAcc(const T* dy, const T* w, T* dx, std::size_t n, std::size_t k,
                 std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      dx[i * k + p] += Dot(dy + i * m, w + p * m, m);
    }
  }
}

template <typename T>
void MatMulTnAcc(const T* x, const T* dy, T* dw, std::size_t n, std::size_t k,
                 std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const T a = x[i * k + p];
      if (a != 0) Axpy(a, dy + i * m, dw + p * m, m);
    }
  }
}

}  // namespace stgr::simd::ref

#endif  // STGR_SIMD_REFERENCE_H_
