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

#ifndef STGR_EVAL_EVALUATE_H_
#define STGR_EVAL_EVALUATE_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stgr/data/action.h"
#include "stgr/data/sft.h"
#include "stgr/model/spacetime_gr.h"

namespace stgr::eval {

// One next-POI prediction: the model sees `history` and the request context
// of the target action.
struct EvalPosition {
  data::UserProfile profile;
  std::vector<data::Action> history;
  data::RequestContext request;
  catalog::PoiId target = 0;
  std::string target_top_level;      // coarsest category of the target
  std::vector<catalog::PoiId> any_of;  // alignment variant: last-5 targets
};

enum class PositionPolicy {
  kEveryAction,  // every interest action after the first
  kLastAction,   // the final action of each sequence
};

// Interest-flagged targets only (It = 1). Sequences shorter than two
// actions contribute nothing.
std::vector<EvalPosition> MakePositions(const data::Dataset& dataset, PositionPolicy policy);

// The last `n` actions of each sequence are targets, predicted from the
// context of the first of them; sequences with at most n actions are skipped.
std::vector<EvalPosition> MakeAnyOfPositions(const data::Dataset& dataset, int n = 5);

struct EvalOptions {
  int w_block = 10;
  int w_inner = 10;
  std::vector<int> discovery_k = {10};
  std::vector<int> discovery_m = {1, 3, 7};
};

struct EvalRow {
  std::string name;
  int max_len = 0;  // history cap of the evaluated model
  int positions = 0;
  double hr1 = 0.0;
  double hr10 = 0.0;
  double hr100 = 0.0;
  double hr10_any_of = 0.0;        // over positions with any_of targets
  double category_acc = 0.0;       // top-1 POI shares the target's top level
  std::optional<double> auc;       // ranking head on labeled samples
  std::map<std::pair<int, int>, double> discovery;  // (k, m) -> mean D
  double runtime_ms = 0.0;
};

// Beam-decodes the top 100 at every position and averages the metrics.
// Throws UsageError when `positions` is empty.
EvalRow Evaluate(const model::SpacetimeGR<float>& model,
                 const std::vector<EvalPosition>& positions, const EvalOptions& options = {});

// Pooled AUC of the ranking scores over all samples' positives and
// negatives; absent when a class is missing.
std::optional<double> RankingAuc(const model::SpacetimeGR<float>& model,
                                 const std::vector<data::SftSample>& samples);

}  // namespace stgr::eval

#endif  // STGR_EVAL_EVALUATE_H_
