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

#include "stgr/nn/grad_check.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace stgr::nn {

GradCheckResult GradCheck(ParameterSet<double>& params, const LossFn& loss,
                          const GradCheckOptions& options) {
  Gradients<double> analytic(params);
  loss(params, &analytic);
  std::mt19937_64 rng(options.seed);
  GradCheckResult result;
  // Candidate order per tensor: nonzero analytic gradients first, shuffled.
  std::vector<std::vector<std::size_t>> order(params.size());
  for (int id = 0; id < params.size(); ++id) {
    std::vector<std::size_t> nonzero, zero;
    for (std::size_t k = 0; k < params.value(id).size(); ++k) {
      (analytic.At(id, k) != 0.0 ? nonzero : zero).push_back(k);
    }
    std::shuffle(nonzero.begin(), nonzero.end(), rng);
    std::shuffle(zero.begin(), zero.end(), rng);
    order[id] = std::move(nonzero);
    order[id].insert(order[id].end(), zero.begin(), zero.end());
  }
  // Round-robin so small tensors are fully covered and the rest of the
  // budget spreads over the larger ones.
  std::vector<std::size_t> take(params.size(), 0);
  for (int budget = options.coordinates; budget > 0;) {
    bool progressed = false;
    for (int id = 0; id < params.size() && budget > 0; ++id) {
      if (take[id] < order[id].size()) {
        ++take[id];
        --budget;
        progressed = true;
      }
    }
    if (!progressed) break;
  }

  for (int id = 0; id < params.size(); ++id) {
    Matrix<double>& p = params.value(id);
    const std::vector<std::size_t> picks(order[id].begin(), order[id].begin() + take[id]);
    for (std::size_t k : picks) {
      const double saved = p[k];
      p[k] = saved + options.eps;
      const double up = loss(params, nullptr);
      p[k] = saved - options.eps;
      const double down = loss(params, nullptr);
      p[k] = saved;
      const double numeric = (up - down) / (2.0 * options.eps);
      const double a = analytic.At(id, k);
      const double diff = std::abs(a - numeric);
      const double scale = std::max(std::abs(a), std::abs(numeric));
      ++result.checked;
      if (scale < options.near_zero) {
        ++result.near_zero;
        result.max_abs_error = std::max(result.max_abs_error, diff);
        continue;
      }
      const double rel = diff / scale;
      if (rel > result.max_rel_error) {
        result.max_rel_error = rel;
        result.worst = params.name(id) + "[" + std::to_string(k) + "]";
      }
    }
  }
  return result;
}

}  // namespace stgr::nn
