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

#ifndef STGR_NN_LOSSES_H_
#define STGR_NN_LOSSES_H_

#include <vector>

// Scalar reference forms of the training losses. The tape ops compute the
// same quantities; these are the closed-form oracles.
namespace stgr::nn {

// -log softmax(logits)[target]. Throws UsageError when target is out of
// range.
double CrossEntropyLoss(const std::vector<double>& logits, int target);

// Cosine similarity; throws NumericError when either vector has zero norm.
double Cosine(const std::vector<double>& a, const std::vector<double>& b);

// -log[sum_pos e^{cos/tau} / (sum_pos e^{cos/tau} + sum_neg e^{cos/tau})].
// Zero when there are no negatives.
double InfoNceLoss(const std::vector<double>& user,
                   const std::vector<std::vector<double>>& positives,
                   const std::vector<std::vector<double>>& negatives, double tau);

// Summed binary cross-entropy with probabilities clamped at 1e-12.
double BceLoss(const std::vector<double>& p, const std::vector<int>& y);
// dL/dp_i of BceLoss.
std::vector<double> BceGradient(const std::vector<double>& p,
                                const std::vector<int>& y);

// Sum over (pos j, neg k) of -log sigmoid(beta * ((a_j - r_j) - (a_k - r_k))).
double DpoLoss(const std::vector<double>& aligned_pos,
               const std::vector<double>& aligned_neg,
               const std::vector<double>& ref_pos,
               const std::vector<double>& ref_neg, double beta);

}  // namespace stgr::nn

#endif  // STGR_NN_LOSSES_H_
