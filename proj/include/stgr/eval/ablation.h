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

#ifndef STGR_EVAL_ABLATION_H_
#define STGR_EVAL_ABLATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stgr/catalog/catalog.h"
#include "stgr/data/action.h"
#include "stgr/data/sft.h"
#include "stgr/eval/evaluate.h"
#include "stgr/model/config.h"
#include "stgr/model/spacetime_gr.h"
#include "stgr/train/plan.h"

namespace stgr::eval {

// One row of the comparison: the base setup with some switches flipped.
struct AblationDelta {
  std::string name;
  std::optional<bool> spatiotemporal;
  std::optional<catalog::IndexScheme> index_scheme;
  std::optional<bool> curriculum;
  std::optional<int> max_len;
  std::optional<bool> multimodal;

  void Apply(model::ModelConfig& config, bool& curriculum) const;
};

// "w/o spatiotemporal", "w/o hierarchical index", "w/o curriculum",
// "max_len=32" ... "max_len=256" and "+ multimodal".
std::vector<AblationDelta> StandardDeltas();

struct AblationSetup {
  catalog::Catalog catalog;
  data::Dataset train;
  std::vector<EvalPosition> positions;
  // Optional ranking stage; AUC is reported on sft_test when both are set.
  std::vector<data::SftSample> sft_train;
  std::vector<data::SftSample> sft_test;
  model::ModelConfig base_config = model::ModelConfig::Desk();
  bool curriculum = true;
  double travel_km = 100.0;
  // Shared by both curriculum phases; the stage field is overridden.
  train::StageConfig pretrain = train::StageConfig::Defaults(train::Stage::kPretrainSingle);
  train::StageConfig sft_gen = train::StageConfig::Defaults(train::Stage::kSftGen);
  EvalOptions eval;
  std::uint64_t seed = 1;
};

// Pretrains a fresh model: the single-pattern then the multi-pattern phase
// with curriculum, one pass over the full data without. Follows with the
// ranking stage when sft_train is non-empty.
model::SpacetimeGR<float> TrainVariant(const AblationSetup& setup,
                                       const model::ModelConfig& config, bool curriculum);

struct EvalReport {
  std::vector<EvalRow> rows;
};

// Base row first, then one row per delta, all from the same seed and data.
EvalReport RunAblation(const AblationSetup& setup, const std::vector<AblationDelta>& deltas);

}  // namespace stgr::eval

#endif  // STGR_EVAL_ABLATION_H_
