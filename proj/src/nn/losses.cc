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

#include "stgr/nn/losses.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stgr/common/error.h"

namespace stgr::nn {
namespace {

double LogSumExp(const std::vector<double>& x) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : x) mx = std::max(mx, v);
  double s = 0.0;
  for (double v : x) s += std::exp(v - mx);
  return mx + std::log(s);
}

double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

}  // namespace

double CrossEntropyLoss(const std::vector<double>& logits, int target) {
  if (target < 0 || target >= static_cast<int>(logits.size())) {
    throw UsageError("cross entropy target " + std::to_string(target) +
                     " out of range");
  }
  return LogSumExp(logits) - logits[target];
}

double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw UsageError("cosine of vectors with different widths");
  double aa = 0, bb = 0, ab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa += a[i] * a[i];
    bb += b[i] * b[i];
    ab += a[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) throw NumericError("cosine of a zero-norm embedding");
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

double InfoNceLoss(const std::vector<double>& user,
                   const std::vector<std::vector<double>>& positives,
                   const std::vector<std::vector<double>>& negatives, double tau) {
  if (positives.empty()) throw UsageError("infonce needs at least one positive");
  std::vector<double> pos, all;
  for (const auto& p : positives) pos.push_back(Cosine(user, p) / tau);
  all = pos;
  for (const auto& n : negatives) all.push_back(Cosine(user, n) / tau);
  return LogSumExp(all) - LogSumExp(pos);
}

double BceLoss(const std::vector<double>& p, const std::vector<int>& y) {
  if (p.size() != y.size()) throw UsageError("bce: sizes differ");
  double loss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = y[i] ? p[i] : 1.0 - p[i];
    loss -= std::log(std::max(q, 1e-12));
  }
  return loss;
}

std::vector<double> BceGradient(const std::vector<double>& p,
                                const std::vector<int>& y) {
  std::vector<double> g(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    g[i] = y[i] ? -1.0 / std::max(p[i], 1e-12) : 1.0 / std::max(1.0 - p[i], 1e-12);
  }
  return g;
}

double DpoLoss(const std::vector<double>& aligned_pos,
               const std::vector<double>& aligned_neg,
               const std::vector<double>& ref_pos,
               const std::vector<double>& ref_neg, double beta) {
  if (aligned_pos.size() != ref_pos.size() || aligned_neg.size() != ref_neg.size()) {
    throw UsageError("dpo: aligned and reference sizes differ");
  }
  double loss = 0.0;
  for (std::size_t j = 0; j < aligned_pos.size(); ++j) {
    for (std::size_t k = 0; k < aligned_neg.size(); ++k) {
      const double z = (aligned_pos[j] - ref_pos[j]) - (aligned_neg[k] - ref_neg[k]);
      loss += Softplus(-beta * z);
    }
  }
  return loss;
}

}  // namespace stgr::nn
