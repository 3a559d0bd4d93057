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

#ifndef STGR_NN_LINALG_H_
#define STGR_NN_LINALG_H_

#include <cstddef>
#include <type_traits>

#include "stgr/simd/kernels.h"
#include "stgr/simd/reference.h"

// Precision dispatch: float goes through the runtime-selected SIMD table,
// double through the scalar reference kernels.
namespace stgr::nn::la {

template <typename T>
inline T Dot(const T* a, const T* b, std::size_t n) {
  if constexpr (std::is_same_v<T, float>) {
    return simd::Active().dot(a, b, n);
  } else {
    return simd::ref::Dot(a, b, n);
  }
}

template <typename T>
inline void Axpy(T alpha, const T* x, T* y, std::size_t n) {
  if constexpr (std::is_same_v<T, float>) {
    simd::Active().axpy(alpha, x, y, n);
  } else {
    simd::ref::Axpy(alpha, x, y, n);
  }
}

template <typename T>
inline void MatMul(const T* x, const T* w, T* y, std::size_t n, std::size_t k,
                   std::size_t m) {
  if constexpr (std::is_same_v<T, float>) {
    simd::Active().matmul(x, w, y, n, k, m);
  } else {
    simd::ref::MatMul(x, w, y, n, k, m);
  }
}

template <typename T>
inline void MatMulNtAcc(const T* dy, const T* w, T* dx, std::size_t n,
                        std::size_t k, std::size_t m) {
  if constexpr (std::is_same_v<T, float>) {
    simd::Active().matmul_nt_acc(dy, w, dx, n, k, m);
  } else {
    simd::ref::MatMulNtAcc(dy, w, dx, n, k, m);
  }
}

template <typename T>
inline void MatMulTnAcc(const T* x, const T* dy, T* dw, std::size_t n,
                        std::size_t k, std::size_t m) {
  if constexpr (std::is_same_v<T, float>) {
    simd::Active().matmul_tn_acc(x, dy, dw, n, k, m);
  } else {
    simd::ref::MatMulTnAcc(x, dy, dw, n, k, m);
  }
}

}  // namespace stgr::nn::la

#endif  // STGR_NN_LINALG_H_
