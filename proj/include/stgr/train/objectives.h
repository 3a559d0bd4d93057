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

#ifndef STGR_TRAIN_OBJECTIVES_H_
#define STGR_TRAIN_OBJECTIVES_H_

#include <vector>

#include "stgr/data/sft.h"
#include "stgr/model/spacetime_gr.h"

namespace stgr::train {

inline constexpr double kDefaultTau = 0.1;
inline constexpr double kDefaultBeta = 1.0;

// Losses of the model on one sample, recorded on `tape`. The tape may hold
// a different parameter set with the same layout (finite differences).

// Cross-entropy at block and inner targets, times `scale`.
template <typename T>
typename nn::Tape<T>::Var PretrainObjective(nn::Tape<T>& tape,
                                            const model::SpacetimeGR<T>& model,
                                            const model::PretrainItem& item, T scale);

// InfoNCE of the user tower against the POI tower over the sample's own
// positives and negatives.
template <typename T>
typename nn::Tape<T>::Var EmbSftObjective(nn::Tape<T>& tape,
                                          const model::SpacetimeGR<T>& model,
                                          const data::SftSample& sample, T tau);

// Summed BCE of the ranking classifier; positives are labeled 1.
template <typename T>
typename nn::Tape<T>::Var GenSftObjective(nn::Tape<T>& tape,
                                          const model::SpacetimeGR<T>& model,
                                          const data::SftSample& sample);

// Reference joint log-probabilities of a sample: positives then negatives.
template <typename T>
std::vector<T> ReferenceLogProbs(const model::SpacetimeGR<T>& reference,
                                 const data::SftSample& sample);

// DPO over every positive x negative pair of the sample against frozen
// reference log-probabilities (as returned by ReferenceLogProbs).
template <typename T>
typename nn::Tape<T>::Var DpoObjective(nn::Tape<T>& tape, const model::SpacetimeGR<T>& model,
                                       const data::SftSample& sample,
                                       const std::vector<T>& reference, T beta);

// Mean over pairs of log P(pos) - log P(neg) under the model.
double MeanPairMargin(const model::SpacetimeGR<float>& model,
                      const std::vector<data::SftSample>& samples);

}  // namespace stgr::train

#endif  // STGR_TRAIN_OBJECTIVES_H_
