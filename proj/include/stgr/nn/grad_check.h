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

#ifndef STGR_NN_GRAD_CHECK_H_
#define STGR_NN_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <string>

#include "stgr/nn/parameters.h"

namespace stgr::nn {

// Returns the loss; fills `grads` with analytic gradients when non-null.
using LossFn =
    std::function<double(const ParameterSet<double>& params, Gradients<double>* grads)>;

struct GradCheckOptions {
  double eps = 1e-3;
  // Total coordinates, dealt round-robin over tensors, preferring
  // coordinates with a nonzero analytic gradient.
  int coordinates = 200;
  std::uint64_t seed = 1;
  // Coordinates where both gradients are below this magnitude are judged by
  // absolute error instead of relative error.
  double near_zero = 1e-7;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;  // over near-zero coordinates
  int checked = 0;
  int near_zero = 0;
  std::string worst;  // "<param>[<index>]" of the largest relative error
};

// Central finite differences against analytic gradients. `params` is
// perturbed in place and restored.
GradCheckResult GradCheck(ParameterSet<double>& params, const LossFn& loss,
                          const GradCheckOptions& options = {});

}  // namespace stgr::nn

#endif  // STGR_NN_GRAD_CHECK_H_
