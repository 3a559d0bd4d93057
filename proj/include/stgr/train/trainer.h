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

#ifndef STGR_TRAIN_TRAINER_H_
#define STGR_TRAIN_TRAINER_H_

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stgr/data/action.h"
#include "stgr/data/sft.h"
#include "stgr/model/spacetime_gr.h"
#include "stgr/train/plan.h"

namespace stgr::train {

// Inputs of a stage: sequences for pretraining, ranking or preference
// samples otherwise.
struct StageData {
  const data::Dataset* sequences = nullptr;
  const std::vector<data::SftSample>* samples = nullptr;
};

struct RunOptions {
  // Saved after every epoch whose losses were all finite; empty disables.
  std::filesystem::path checkpoint_dir;
  std::map<std::string, std::string> checkpoint_meta;
  // Appends {step, stage, loss, lr, wall_ms} per step and
  // {epoch, stage, validation} per epoch; empty disables.
  std::filesystem::path metrics_path;
  std::function<std::map<std::string, double>(const model::SpacetimeGR<float>&)> validate;
  // Called after every step with (step, loss).
  std::function<void(int, double)> on_step;
};

struct StageResult {
  int steps = 0;
  int epochs = 0;
  int skipped = 0;  // sequences or samples that carry no training signal
  std::vector<double> losses;  // per step
  std::string digest;          // parameter digest after the stage
  // DPO only: digest of the frozen reference before and after.
  std::string reference_before;
  std::string reference_after;
};

// Runs one stage of the plan on `model` in place. Deterministic for a given
// seed regardless of the worker count. A non-finite loss throws
// NumericError; the model keeps the parameters of the last completed step
// and the checkpoint directory keeps the last completed epoch.
StageResult RunStage(const StageConfig& config, const StageData& data,
                     model::SpacetimeGR<float>& model, const RunOptions& options = {});

// Pretraining. With the curriculum: a pretrain_single pass over the
// status-homogeneous subsequences, then pretrain_multi over the mixed
// sequences (skipped when there are none). Without it: one pretrain_single
// pass over the dataset. Home anchors use a grid of the model's block size.
std::vector<StageResult> RunPretrain(const StageConfig& config, const data::Dataset& dataset,
                                     bool curriculum, double travel_km,
                                     model::SpacetimeGR<float>& model,
                                     const RunOptions& options = {});

}  // namespace stgr::train

#endif  // STGR_TRAIN_TRAINER_H_
