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

#ifndef STGR_TRAIN_PLAN_H_
#define STGR_TRAIN_PLAN_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "stgr/nn/adam.h"

namespace stgr::train {

enum class Stage { kPretrainSingle, kPretrainMulti, kSftEmb, kSftGen, kDpo };
std::string_view StageName(Stage s);
// Throws UsageError for an unknown name.
Stage ParseStage(std::string_view name);
bool IsPretrain(Stage s);

struct StageConfig {
  Stage stage = Stage::kPretrainSingle;
  int epochs = 1;
  int batch_size = 16;
  int max_steps = 0;  // > 0 stops early
  // horizon 0 means "the stage's total step count".
  nn::Schedule schedule;
  nn::AdamConfig adam;
  double tau = 0.1;
  double beta = 1.0;
  std::uint64_t seed = 1;

  // Pretrain 1e-3 -> 1e-4 with 250 warmup steps, SFT 1e-4 -> 1e-5, DPO
  // 1e-5 -> 1e-6; cosine decay over the whole stage.
  static StageConfig Defaults(Stage stage);
  // Throws UsageError.
  void Validate() const;
};

struct TrainPlan {
  bool curriculum = true;
  std::vector<StageConfig> stages;

  // Throws UsageError when a stage is invalid or pretrain_multi comes
  // before pretrain_single (or appears without curriculum).
  void Validate() const;
};

}  // namespace stgr::train

#endif  // STGR_TRAIN_PLAN_H_
