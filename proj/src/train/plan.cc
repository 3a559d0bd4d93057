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

#include "stgr/train/plan.h"

#include <string>

#include "stgr/common/error.h"

namespace stgr::train {

std::string_view StageName(Stage s) {
  switch (s) {
    case Stage::kPretrainSingle:
      return "pretrain_single";
    case Stage::kPretrainMulti:
      return "pretrain_multi";
    case Stage::kSftEmb:
      return "sft_emb";
    case Stage::kSftGen:
      return "sft_gen";
    case Stage::kDpo:
      return "dpo";
  }
  return "pretrain_single";
}

Stage ParseStage(std::string_view name) {
  for (Stage s : {Stage::kPretrainSingle, Stage::kPretrainMulti, Stage::kSftEmb,
                  Stage::kSftGen, Stage::kDpo}) {
    if (StageName(s) == name) return s;
  }
  throw UsageError("unknown stage '" + std::string(name) + "'");
}

bool IsPretrain(Stage s) { return s == Stage::kPretrainSingle || s == Stage::kPretrainMulti; }

StageConfig StageConfig::Defaults(Stage stage) {
  StageConfig c;
  c.stage = stage;
  c.schedule.horizon = 0;
  if (IsPretrain(stage)) {
    c.schedule.lr0 = 1e-3;
    c.schedule.min_lr = 1e-4;
    c.schedule.warmup = 250;
  } else if (stage == Stage::kDpo) {
    c.schedule.lr0 = 1e-5;
    c.schedule.min_lr = 1e-6;
    c.schedule.warmup = 0;
  } else {
    c.schedule.lr0 = 1e-4;
    c.schedule.min_lr = 1e-5;
    c.schedule.warmup = 0;
  }
  return c;
}

void StageConfig::Validate() const {
  const std::string name(StageName(stage));
  if (epochs < 1) throw UsageError(name + ": epochs must be >= 1");
  if (batch_size < 1) throw UsageError(name + ": batch_size must be >= 1");
  if (max_steps < 0) throw UsageError(name + ": max_steps must be >= 0");
  if (!(tau > 0)) throw UsageError(name + ": tau must be > 0");
  if (!(beta > 0)) throw UsageError(name + ": beta must be > 0");
  nn::Schedule s = schedule;
  if (s.horizon == 0) s.horizon = 1;
  s.Validate();
}

void TrainPlan::Validate() const {
  int single = -1;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    stages[i].Validate();
    if (stages[i].stage == Stage::kPretrainSingle && single < 0) single = static_cast<int>(i);
    if (stages[i].stage == Stage::kPretrainMulti) {
      if (!curriculum) throw UsageError("pretrain_multi needs curriculum enabled");
      if (single < 0) {
        throw UsageError("curriculum order: pretrain_single must precede pretrain_multi");
      }
    }
  }
}

}  // namespace stgr::train
