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

#include "stgr/simd/kernels.h"

#include <cstdlib>
#include <cstring>

#include "stgr/simd/reference.h"

namespace stgr::simd {

#if STGR_HAVE_AVX2
// Defined in kernels_avx2.cc, compiled with -mavx2 -mfma.
const KernelTable& Avx2Table();
#endif

namespace {

const KernelTable kScalarTable = {
    Isa::kScalar,
    "scalar",
    &ref::Dot<float>,
    &ref::Axpy<float>,
    &ref::MatMul<float>,
    &ref::MatMulNtAcc<float>,
    &ref::MatMulTnAcc<float>,
};

bool CpuHasAvx2() {
#if STGR_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* PickDefault() {
  const char* env = std::getenv("STGR_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalarTable;
  if (IsaAvailable(Isa::kAvx2)) return &KernelsFor(Isa::kAvx2);
  return &kScalarTable;
}

const KernelTable*& ActiveSlot() {
  static const KernelTable* active = PickDefault();
  return active;
}

}  // namespace

bool IsaAvailable(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2: {
      static const bool ok = CpuHasAvx2();
      return ok;
    }
  }
  return false;
}

std::vector<Isa> AvailableIsas() {
  std::vector<Isa> out = {Isa::kScalar};
  if (IsaAvailable(Isa::kAvx2)) out.push_back(Isa::kAvx2);
  return out;
}

const KernelTable& KernelsFor(Isa isa) {
#if STGR_HAVE_AVX2
  if (isa == Isa::kAvx2 && IsaAvailable(Isa::kAvx2)) return Avx2Table();
#endif
  (void)isa;
  return kScalarTable;
}

const KernelTable& Active() { return *ActiveSlot(); }

void SetActive(Isa isa) { ActiveSlot() = &KernelsFor(isa); }

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace stgr::simd
