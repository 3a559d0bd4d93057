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

#include "stgr/train/trainer.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>

#include "json.hpp"

#include "stgr/common/error.h"
#include "stgr/common/parallel.h"
#include "stgr/data/curriculum.h"
#include "stgr/model/checkpoint.h"
#include "stgr/train/objectives.h"

namespace stgr::train {

namespace {

using Model = model::SpacetimeGR<float>;

// One unit of work: a pretrain item or an SFT/DPO sample.
struct Unit {
  std::optional<model::PretrainItem> item;
  const data::SftSample* sample = nullptr;
  std::vector<float> reference;  // DPO
};

std::vector<Unit> PrepareUnits(const StageConfig& config, const StageData& data,
                               const Model& model, const Model* reference, int* skipped) {
  std::vector<Unit> units;
  if (IsPretrain(config.stage)) {
    if (data.sequences == nullptr) throw UsageError("pretrain stage needs sequences");
    for (const auto& seq : *data.sequences) {
      auto item = model.BuildPretrain(seq);
      if (!item) {
        ++*skipped;
        continue;
      }
      units.push_back({std::move(item), nullptr, {}});
    }
  } else {
    if (data.samples == nullptr) throw UsageError("SFT and DPO stages need samples");
    for (const auto& s : *data.samples) {
      const bool ok = !s.positives.empty() &&
                      (config.stage == Stage::kSftEmb || !s.negatives.empty() ||
                       config.stage == Stage::kSftGen);
      if (!ok) {
        ++*skipped;
        continue;
      }
      Unit u{std::nullopt, &s, {}};
      if (config.stage == Stage::kDpo) u.reference = ReferenceLogProbs(*reference, s);
      units.push_back(std::move(u));
    }
  }
  if (units.empty()) {
    throw DataError(std::string(StageName(config.stage)) + ": no usable training samples");
  }
  return units;
}

double UnitLoss(const StageConfig& config, const Model& model, const Unit& u, float scale,
                nn::Gradients<float>* grads) {
  nn::Tape<float> tape(model.params(), grads);
  nn::Tape<float>::Var loss = -1;
  switch (config.stage) {
    case Stage::kPretrainSingle:
    case Stage::kPretrainMulti:
      loss = PretrainObjective(tape, model, *u.item, scale);
      break;
    case Stage::kSftEmb:
      loss = EmbSftObjective(tape, model, *u.sample, static_cast<float>(config.tau));
      break;
    case Stage::kSftGen:
      loss = GenSftObjective(tape, model, *u.sample);
      break;
    case Stage::kDpo:
      loss = DpoObjective(tape, model, *u.sample, u.reference, static_cast<float>(config.beta));
      break;
  }
  const double value = tape.value(loss)[0];
  if (!std::isfinite(value)) {
    throw NumericError(std::string(StageName(config.stage)) + ": non-finite loss");
  }
  tape.Backward(loss);
  return value;
}

}  // namespace

StageResult RunStage(const StageConfig& config, const StageData& data, Model& model,
                     const RunOptions& options) {
  config.Validate();
  StageResult result;
  const std::string stage(StageName(config.stage));

  std::optional<Model> reference;
  if (config.stage == Stage::kDpo) {
    reference.emplace(model);
    result.reference_before = reference->params().Digest();
  }
  std::vector<Unit> units =
      PrepareUnits(config, data, model, reference ? &*reference : nullptr, &result.skipped);

  const int batches_per_epoch =
      static_cast<int>((units.size() + config.batch_size - 1) / config.batch_size);
  int total_steps = batches_per_epoch * config.epochs;
  if (config.max_steps > 0) total_steps = std::min(total_steps, config.max_steps);
  nn::Schedule schedule = config.schedule;
  if (schedule.horizon == 0) schedule.horizon = std::max(total_steps, 1);

  std::ofstream metrics;
  if (!options.metrics_path.empty()) {
    metrics.open(options.metrics_path, std::ios::app);
    if (!metrics) throw DataError("cannot open metrics log " + options.metrics_path.string());
  }
  const auto start = std::chrono::steady_clock::now();

  auto adam = nn::AdamState<float>::Zeros(model.params());
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(units.size());
  for (int epoch = 0; epoch < config.epochs && result.steps < total_steps; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int b = 0; b < batches_per_epoch && result.steps < total_steps; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * config.batch_size;
      const std::size_t hi = std::min(order.size(), lo + config.batch_size);
      const std::size_t n = hi - lo;
      float scale = 1.0f;
      if (IsPretrain(config.stage)) {
        std::size_t targets = 0;
        for (std::size_t i = lo; i < hi; ++i) targets += units[order[i]].item->rows.size();
        scale = 1.0f / static_cast<float>(targets);
      }
      std::vector<nn::Gradients<float>> grads(n, nn::Gradients<float>(model.params()));
      std::vector<double> losses(n, 0.0);
      ParallelFor(n, [&](std::size_t i) {
        losses[i] = UnitLoss(config, model, units[order[lo + i]], scale, &grads[i]);
      });
      double loss = 0.0;
      for (std::size_t i = 0; i < n; ++i) loss += losses[i];
      for (std::size_t i = 1; i < n; ++i) grads[0].Accumulate(grads[i]);
      if (!std::isfinite(grads[0].SquaredNorm())) {
        throw NumericError(stage + ": non-finite gradient at step " +
                           std::to_string(result.steps + 1));
      }
      const nn::StepInfo info =
          nn::AdamStep(model.params(), grads[0], adam, schedule, config.adam);
      ++result.steps;
      result.losses.push_back(loss);
      if (metrics.is_open()) {
        const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        nlohmann::ordered_json rec = {{"step", result.steps}, {"stage", stage},
                                      {"loss", loss},         {"lr", info.lr},
                                      {"wall_ms", wall.count()}};
        metrics << rec.dump() << '\n';
      }
      if (options.on_step) options.on_step(result.steps, loss);
    }
    ++result.epochs;
    if (options.validate && metrics.is_open()) {
      nlohmann::ordered_json rec = {{"epoch", result.epochs}, {"stage", stage}};
      rec["validation"] = options.validate(model);
      metrics << rec.dump() << '\n';
    }
    if (!options.checkpoint_dir.empty()) {
      auto meta = options.checkpoint_meta;
      meta["stage"] = stage;
      meta["epoch"] = std::to_string(result.epochs);
      meta["step"] = std::to_string(result.steps);
      model::SaveCheckpoint(model, options.checkpoint_dir, meta);
    }
  }
  metrics.flush();
  result.digest = model.params().Digest();
  if (reference) result.reference_after = reference->params().Digest();
  return result;
}

std::vector<StageResult> RunPretrain(const StageConfig& config, const data::Dataset& dataset,
                                     bool curriculum, double travel_km, Model& model,
                                     const RunOptions& options) {
  StageConfig stage = config;
  stage.stage = Stage::kPretrainSingle;
  if (!curriculum) return {RunStage(stage, {&dataset, nullptr}, model, options)};
  std::vector<geo::GeoPoint> points;
  for (const auto& seq : dataset) {
    for (const auto& a : seq.actions) points.push_back(a.g_u);
  }
  if (points.empty()) throw DataError("pretrain: the dataset has no actions");
  data::CurriculumConfig cc;
  cc.grid = geo::GridCovering(points, model.config().block_cell_km);
  cc.travel_km = travel_km;
  const data::CurriculumSplit split = data::PartitionCurriculum(dataset, cc);
  std::vector<StageResult> results = {RunStage(stage, {&split.single, nullptr}, model, options)};
  if (!split.multi.empty()) {
    stage.stage = Stage::kPretrainMulti;
    results.push_back(RunStage(stage, {&split.multi, nullptr}, model, options));
  }
  return results;
}

}  // namespace stgr::train
