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

#ifndef STGR_EVAL_METRICS_H_
#define STGR_EVAL_METRICS_H_

#include <optional>
#include <vector>

#include "stgr/catalog/catalog.h"
#include "stgr/data/action.h"

namespace stgr::eval {

using catalog::PoiId;

// Fraction of positions whose target is among the first k predictions.
// A list shorter than k counts as its full length (exhaustive decoding of a
// small catalog). Throws UsageError for k < 1, no positions, or mismatched
// sizes.
double HitRate(const std::vector<std::vector<PoiId>>& predictions,
               const std::vector<PoiId>& targets, int k);

// Hit when any of a position's targets is among the first k predictions.
double HitRateAnyOf(const std::vector<std::vector<PoiId>>& predictions,
                    const std::vector<std::vector<PoiId>>& targets, int k);

// Rank-statistic AUC with ties counted as 1/2. Absent unless both classes
// are present. Throws UsageError on mismatched sizes.
std::optional<double> Auc(const std::vector<double>& scores,
                          const std::vector<int>& labels);

// O(n_pos * n_neg) pair counting; the reference for Auc.
std::optional<double> AucPairwise(const std::vector<double>& scores,
                                  const std::vector<int>& labels);

// D(k, m): share of the first k recommendations the user did not interact
// with on their last m active UTC days. 1 when that window is empty.
// Throws UsageError for k < 1, m < 0 or an empty recommendation list.
double DiscoveryRate(const std::vector<PoiId>& recs,
                     const std::vector<data::Action>& history, int k, int m);

}  // namespace stgr::eval

#endif  // STGR_EVAL_METRICS_H_
