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

#ifndef STGR_NN_ADAM_H_
#define STGR_NN_ADAM_H_

#include <cstdint>
#include <vector>

#include "stgr/nn/parameters.h"

namespace stgr::nn {

// Linear warmup to lr0, then cosine decay to min_lr at `horizon`; flat
// afterwards. Steps are 1-based.
struct Schedule {
  double lr0 = 1e-3;
  double min_lr = 1e-4;
  int warmup = 250;
  int horizon = 1000;

  void Validate() const;
  double At(std::int64_t step) const;
};

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // Global gradient-norm clip; <= 0 disables.
  double clip_norm = 1.0;
};

template <typename T>
struct AdamState {
  std::int64_t step = 0;
  std::vector<Matrix<T>> m;
  std::vector<Matrix<T>> v;

  static AdamState Zeros(const ParameterSet<T>& params);
};

struct StepInfo {
  double lr = 0.0;
  double grad_norm = 0.0;  // before clipping
};

// One bias-corrected Adam update. Untouched gradient tensors count as zero.
// Throws UsageError on a shape mismatch.
template <typename T>
StepInfo AdamStep(ParameterSet<T>& params, const Gradients<T>& grads,
                  AdamState<T>& state, const Schedule& schedule,
                  const AdamConfig& config);

}  // namespace stgr::nn

#endif  // STGR_NN_ADAM_H_
