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

#ifndef STGR_CLI_RUN_CONFIG_H_
#define STGR_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stgr/data/synth.h"
#include "stgr/model/config.h"
#include "stgr/train/plan.h"
#include "stgr/train/preference.h"

namespace stgr::cli {

struct Paths {
  std::filesystem::path catalog;
  std::filesystem::path dataset;
  std::filesystem::path samples;
  std::filesystem::path checkpoint_dir;
  std::filesystem::path report_dir;
};

struct CleanseSettings {
  double r_min = 0.3;
  // Top-level or full category keys labeled functional (It = 0).
  std::vector<std::string> functional = {"office", "medical"};
  double search_ratio_threshold = 0.7;
  bool hard_drop_functional = false;
};

struct EvalSettings {
  int w_block = 10;
  int w_inner = 10;
  std::string policy = "last";  // last | every
  std::vector<int> discovery_k = {10};
  std::vector<int> discovery_m = {1, 3, 7};
};

// Everything one pipeline run needs. Sections of the text form: [run]
// (also the implicit leading section), [paths], [model], [pretrain],
// [sft_emb], [sft_gen], [align], [synth], [cleanse], [preference], [eval].
struct RunConfig {
  Paths paths;
  model::ModelConfig model = model::ModelConfig::Desk();
  std::uint64_t seed = 1;
  bool curriculum = true;
  double travel_km = 100.0;
  // [pretrain] drives both curriculum phases. [run] tau lands in
  // sft_emb.tau and [run] beta in align.beta.
  train::StageConfig pretrain = train::StageConfig::Defaults(train::Stage::kPretrainSingle);
  train::StageConfig sft_emb = train::StageConfig::Defaults(train::Stage::kSftEmb);
  train::StageConfig sft_gen = train::StageConfig::Defaults(train::Stage::kSftGen);
  train::StageConfig align = train::StageConfig::Defaults(train::Stage::kDpo);
  data::SynthConfig synth = data::SynthConfig::Default();
  CleanseSettings cleanse;
  train::PreferenceRule preference;
  EvalSettings eval;

  // Copies the run seed into every stage and validates the model and
  // stages. Throws UsageError.
  void Finalize();
};

// key=value lines with [section] headers; '#' starts a comment. Omitted
// keys keep their defaults, unknown sections or keys throw UsageError.
RunConfig ParseRunConfig(const std::string& text);
// Throws DataError when the file cannot be read.
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Canonical text with every key; ParseRunConfig(ToText(c)) reproduces c.
std::string ToText(const RunConfig& config);
// SHA-1 of the canonical text.
std::string ConfigDigest(const RunConfig& config);

}  // namespace stgr::cli

#endif  // STGR_CLI_RUN_CONFIG_H_
