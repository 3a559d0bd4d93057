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

#include "stgr/eval/ablation.h"

#include <memory>

#include "stgr/model/context.h"
#include "stgr/train/trainer.h"

namespace stgr::eval {

void AblationDelta::Apply(model::ModelConfig& config, bool& use_curriculum) const {
  if (spatiotemporal) config.spatiotemporal = *spatiotemporal;
  if (index_scheme) config.index_scheme = *index_scheme;
  if (curriculum) use_curriculum = *curriculum;
  if (max_len) config.max_len = *max_len;
  if (multimodal) config.multimodal = *multimodal;
}

std::vector<AblationDelta> StandardDeltas() {
  std::vector<AblationDelta> deltas;
  AblationDelta d;
  d.name = "w/o spatiotemporal";
  d.spatiotemporal = false;
  deltas.push_back(d);
  d = {};
  d.name = "w/o hierarchical index";
  d.index_scheme = catalog::IndexScheme::kHashed;
  deltas.push_back(d);
  d = {};
  d.name = "w/o curriculum";
  d.curriculum = false;
  deltas.push_back(d);
  for (int len : {32, 64, 128, 256}) {
    d = {};
    d.name = "max_len=" + std::to_string(len);
    d.max_len = len;
    deltas.push_back(d);
  }
  d = {};
  d.name = "+ multimodal";
  d.multimodal = true;
  deltas.push_back(d);
  return deltas;
}

model::SpacetimeGR<float> TrainVariant(const AblationSetup& setup,
                                       const model::ModelConfig& config, bool curriculum) {
  auto context = model::ModelContext::Build(setup.catalog, config);
  model::SpacetimeGR<float> model(context, config, setup.seed);
  train::RunPretrain(setup.pretrain, setup.train, curriculum, setup.travel_km, model);
  if (!setup.sft_train.empty()) {
    train::StageConfig sft = setup.sft_gen;
    sft.stage = train::Stage::kSftGen;
    train::RunStage(sft, {nullptr, &setup.sft_train}, model);
  }
  return model;
}

EvalReport RunAblation(const AblationSetup& setup, const std::vector<AblationDelta>& deltas) {
  AblationDelta base;
  base.name = "base";
  std::vector<AblationDelta> rows = {base};
  rows.insert(rows.end(), deltas.begin(), deltas.end());
  EvalReport report;
  for (const AblationDelta& delta : rows) {
    model::ModelConfig config = setup.base_config;
    bool curriculum = setup.curriculum;
    delta.Apply(config, curriculum);
    const model::SpacetimeGR<float> model = TrainVariant(setup, config, curriculum);
    EvalRow row = Evaluate(model, setup.positions, setup.eval);
    row.name = delta.name;
    if (!setup.sft_test.empty()) row.auc = RankingAuc(model, setup.sft_test);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace stgr::eval
