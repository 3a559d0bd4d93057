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

#include "stgr/nn/adam.h"

#include <cmath>
#include <numbers>

namespace stgr::nn {

void Schedule::Validate() const {
  if (!(lr0 >= 0) || !(min_lr >= 0)) throw UsageError("learning rates must be >= 0");
  if (warmup < 0 || horizon < 1) throw UsageError("schedule needs warmup >= 0, horizon >= 1");
}

double Schedule::At(std::int64_t step) const {
  if (step <= 0) return 0.0;
  if (step <= warmup) return lr0 * static_cast<double>(step) / warmup;
  if (horizon <= warmup) return min_lr;
  const double progress =
      std::min(1.0, static_cast<double>(step - warmup) / (horizon - warmup));
  return min_lr + 0.5 * (lr0 - min_lr) * (1.0 + std::cos(std::numbers::pi * progress));
}

template <typename T>
AdamState<T> AdamState<T>::Zeros(const ParameterSet<T>& params) {
  AdamState s;
  for (int i = 0; i < params.size(); ++i) {
    s.m.emplace_back(params.value(i).rows(), params.value(i).cols());
    s.v.emplace_back(params.value(i).rows(), params.value(i).cols());
  }
  return s;
}

template <typename T>
StepInfo AdamStep(ParameterSet<T>& params, const Gradients<T>& grads,
                  AdamState<T>& state, const Schedule& schedule,
                  const AdamConfig& config) {
  CheckShape(grads.size() == params.size() &&
                 static_cast<int>(state.m.size()) == params.size(),
             "adam: parameter, gradient and state counts differ");
  StepInfo info;
  info.grad_norm = std::sqrt(grads.SquaredNorm());
  double scale = 1.0;
  if (config.clip_norm > 0 && info.grad_norm > config.clip_norm) {
    scale = config.clip_norm / info.grad_norm;
  }
  ++state.step;
  info.lr = schedule.At(state.step);
  const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  for (int i = 0; i < params.size(); ++i) {
    Matrix<T>& p = params.value(i);
    Matrix<T>& m = state.m[i];
    Matrix<T>& v = state.v[i];
    CheckShape(m.size() == p.size(), "adam moments for " + params.name(i));
    const bool touched = grads.touched(i);
    if (touched) CheckShape(grads.Peek(i).size() == p.size(), "gradient " + params.name(i));
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double g = touched ? grads.Peek(i)[k] * scale : 0.0;
      const double mk = config.beta1 * m[k] + (1.0 - config.beta1) * g;
      const double vk = config.beta2 * v[k] + (1.0 - config.beta2) * g * g;
      m[k] = static_cast<T>(mk);
      v[k] = static_cast<T>(vk);
      const double update = info.lr * (mk / bc1) / (std::sqrt(vk / bc2) + config.eps);
      p[k] = static_cast<T>(p[k] - update);
    }
  }
  return info;
}

template struct AdamState<float>;
template struct AdamState<double>;
template StepInfo AdamStep(ParameterSet<float>&, const Gradients<float>&,
                           AdamState<float>&, const Schedule&, const AdamConfig&);
template StepInfo AdamStep(ParameterSet<double>&, const Gradients<double>&,
                           AdamState<double>&, const Schedule&, const AdamConfig&);

}  // namespace stgr::nn
