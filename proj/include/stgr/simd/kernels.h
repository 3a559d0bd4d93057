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

#ifndef STGR_SIMD_KERNELS_H_
#define STGR_SIMD_KERNELS_H_

// Float32 inner-loop kernels with runtime ISA selection. Every kernel has a
// scalar reference (reference.h) and, where the build and CPU allow it, an
// AVX2+FMA variant. The variants agree to rounding; tests/unit/simd_test.cc
// checks each pair.

#include <cstddef>
#include <string_view>
#include <vector>

namespace stgr::simd {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  // sum_i a[i] * b[i]
  float (*dot)(const float* a, const float* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(float alpha, const float* x, float* y, std::size_t n);
  // y[n x m] = x[n x k] * w[k x m]
  void (*matmul)(const float* x, const float* w, float* y, std::size_t n,
                 std::size_t k, std::size_t m);
  // dx[n x k] += dy[n x m] * w[k x m]^T
  void (*matmul_nt_acc)(const float* dy, const float* w, float* dx,
                        std::size_t n, std::size_t k, std::size_t m);
  // dw[k x m] += x[n x k]^T * dy[n x m]
  void (*matmul_tn_acc)(const float* x, const float* dy, float* dw,
                        std::size_t n, std::size_t k, std::size_t m);
};

// True when the variant was compiled in and the running CPU supports it.
bool IsaAvailable(Isa isa);

std::vector<Isa> AvailableIsas();

const KernelTable& KernelsFor(Isa isa);

// The table used by the numeric core. Picked once: the best available ISA,
// unless STGR_SIMD=scalar is set in the environment.
const KernelTable& Active();

// Overrides the active table (tests and benchmarks). Not thread-safe with
// respect to concurrent kernel users.
void SetActive(Isa isa);

std::string_view IsaName(Isa isa);

}  // namespace stgr::simd

#endif  // STGR_SIMD_KERNELS_H_
