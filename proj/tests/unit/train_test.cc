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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "stgr/common/error.h"
#include "stgr/model/checkpoint.h"
#include "stgr/nn/grad_check.h"
#include "stgr/nn/losses.h"
#include "stgr/train/objectives.h"
#include "stgr/train/preference.h"
#include "stgr/train/trainer.h"
#include "support/toy.h"

namespace stgr::train {
namespace {

using model::SpacetimeGR;

struct World {
  data::SynthResult synth;
  model::ModelConfig config;
  std::shared_ptr<const model::ModelContext> ctx;
};

World MakeWorld(int pois = 30, int users = 10) {
  World w{testing::SmallWorld(pois, users, 3, 0, 2), testing::TinyConfig(), nullptr};
  w.ctx = testing::ContextFor(w.synth.catalog, w.config);
  return w;
}

// Asserts a relative error below 1e-3 over at least 200 coordinates.
template <typename Fn>
void ExpectGradientsMatch(SpacetimeGR<double>& m, Fn objective) {
  nn::LossFn fn = [&](const nn::ParameterSet<double>& p, nn::Gradients<double>* g) {
    nn::Tape<double> tape(p, g);
    auto loss = objective(tape);
    if (g != nullptr) tape.Backward(loss);
    return tape.value(loss)[0];
  };
  nn::GradCheckOptions opt;
  opt.eps = 1e-5;
  opt.coordinates = 240;
  const auto r = nn::GradCheck(m.params(), fn, opt);
  EXPECT_GE(r.checked, 200);
  EXPECT_LT(r.max_rel_error, 1e-3) << "worst " << r.worst;
  EXPECT_LT(r.max_abs_error, 1e-6);
}

TEST(PlanTest, CurriculumOrderIsEnforced) {
  TrainPlan plan;
  plan.stages = {StageConfig::Defaults(Stage::kPretrainMulti),
                 StageConfig::Defaults(Stage::kPretrainSingle)};
  EXPECT_THROW(plan.Validate(), UsageError);
  std::swap(plan.stages[0], plan.stages[1]);
  EXPECT_NO_THROW(plan.Validate());
  plan.curriculum = false;
  EXPECT_THROW(plan.Validate(), UsageError);
  plan.stages.pop_back();
  EXPECT_NO_THROW(plan.Validate());
}

TEST(PlanTest, DefaultLearningRates) {
  const auto pre = StageConfig::Defaults(Stage::kPretrainSingle);
  EXPECT_EQ(pre.schedule.lr0, 1e-3);
  EXPECT_EQ(pre.schedule.min_lr, 1e-4);
  EXPECT_EQ(pre.schedule.warmup, 250);
  const auto sft = StageConfig::Defaults(Stage::kSftGen);
  EXPECT_EQ(sft.schedule.lr0, 1e-4);
  EXPECT_EQ(sft.schedule.min_lr, 1e-5);
  const auto dpo = StageConfig::Defaults(Stage::kDpo);
  EXPECT_EQ(dpo.schedule.lr0, 1e-5);
  EXPECT_EQ(dpo.schedule.min_lr, 1e-6);
  EXPECT_EQ(dpo.tau, 0.1);
  EXPECT_EQ(dpo.beta, 1.0);
  EXPECT_EQ(ParseStage("sft_emb"), Stage::kSftEmb);
  EXPECT_THROW(ParseStage("warmup"), UsageError);
}

TEST(PreferenceTest, RankingPairsAreTheCrossProduct) {
  data::SftSample s;
  s.user_id = "u";
  s.positives = {1, 2};
  s.negatives = {3, 4, 5};
  data::SftSample empty_neg = s;
  empty_neg.negatives.clear();
  auto set = PairsFromRanking({s, empty_neg});
  EXPECT_EQ(set.pairs.size(), 6u);
  EXPECT_EQ(set.samples.size(), 1u);
  EXPECT_EQ(set.skipped, 1);
}

TEST(PreferenceTest, RuleTemplatePrefersFoodAtNoon) {
  World w = MakeWorld();
  auto set = PairsFromRule(w.synth.dataset, w.synth.catalog, PreferenceRule{}, 5);
  ASSERT_EQ(set.samples.size(), w.synth.dataset.size());
  for (const auto& p : set.pairs) {
    const auto& s = set.samples[p.sample];
    EXPECT_EQ(data::DecomposeTime(s.request.t).hour, 12);
    EXPECT_EQ(w.synth.catalog.Get(p.positive).category.front(), "food");
    EXPECT_NE(w.synth.catalog.Get(p.negative).category.front(), "food");
    EXPECT_GT(s.request.t, s.history.back().t);
  }
}

TEST(ObjectiveTest, ClosedFormsThroughTheModel) {
  World w = MakeWorld();
  SpacetimeGR<double> m(w.ctx, w.config, 4);
  const data::SftSample& s = w.synth.sft.at(0);
  ASSERT_FALSE(s.negatives.empty());
  nn::Tape<double> tape(m.params(), nullptr);

  data::SftSample only_pos = s;
  only_pos.negatives.clear();
  EXPECT_EQ(tape.value(EmbSftObjective(tape, m, only_pos, 0.1))[0], 0.0);

  SpacetimeGR<double> zero = m;
  zero.params().value(zero.ids().cls).Fill(0.0);
  const double k = s.positives.size() + s.negatives.size();
  nn::Tape<double> zero_tape(zero.params(), nullptr);
  EXPECT_NEAR(zero_tape.value(GenSftObjective(zero_tape, zero, s))[0], k * std::log(2.0),
              1e-12);

  const auto ref = ReferenceLogProbs(m, s);
  const double pairs = s.positives.size() * s.negatives.size();
  EXPECT_NEAR(tape.value(DpoObjective(tape, m, s, ref, 1.0))[0], pairs * std::log(2.0), 1e-12);
}

TEST(ObjectiveTest, InfoNceFallsAsPositiveCosineRises) {
  const std::vector<double> u = {1.0, 0.0};
  double prev = 1e300;
  for (double angle = 2.5; angle >= 0.0; angle -= 0.5) {
    const double l = nn::InfoNceLoss(u, {{std::cos(angle), std::sin(angle)}}, {{0.0, 1.0}}, 0.1);
    EXPECT_LT(l, prev);
    prev = l;
  }
}

class ModelGradientTest : public ::testing::Test {
 protected:
  void SetUp() override {
    world_ = MakeWorld(20, 4);
    model_ = std::make_unique<SpacetimeGR<double>>(world_.ctx, world_.config, 8);
    sample_ = world_.synth.sft.at(1);
  }
  World world_;
  std::unique_ptr<SpacetimeGR<double>> model_;
  data::SftSample sample_;
};

TEST_F(ModelGradientTest, Pretrain) {
  auto item = model_->BuildPretrain(world_.synth.dataset[0]);
  ASSERT_TRUE(item.has_value());
  ExpectGradientsMatch(*model_, [&](nn::Tape<double>& t) {
    return PretrainObjective(t, *model_, *item, 1.0 / item->rows.size());
  });
}

TEST_F(ModelGradientTest, InfoNce) {
  ExpectGradientsMatch(*model_, [&](nn::Tape<double>& t) {
    return EmbSftObjective(t, *model_, sample_, 0.1);
  });
}

TEST_F(ModelGradientTest, Bce) {
  ExpectGradientsMatch(*model_, [&](nn::Tape<double>& t) {
    return GenSftObjective(t, *model_, sample_);
  });
}

TEST_F(ModelGradientTest, Dpo) {
  // A reference that differs from the model so the margins are nonzero.
  SpacetimeGR<double> ref(world_.ctx, world_.config, 9);
  const auto lp = ReferenceLogProbs(ref, sample_);
  ExpectGradientsMatch(*model_, [&](nn::Tape<double>& t) {
    return DpoObjective(t, *model_, sample_, lp, 1.0);
  });
}

StageConfig Quick(Stage stage, int steps) {
  StageConfig c = StageConfig::Defaults(stage);
  c.batch_size = 4;
  c.epochs = 100;
  c.max_steps = steps;
  c.schedule.lr0 = 3e-3;
  c.schedule.min_lr = 3e-4;
  c.schedule.warmup = 0;
  c.seed = 11;
  return c;
}

TEST(RunStageTest, DeterministicAcrossWorkerCounts) {
  World w = MakeWorld();
  StageData data{&w.synth.dataset, nullptr};
  std::string digests[2];
  const char* threads[2] = {"1", "4"};
  for (int i = 0; i < 2; ++i) {
    setenv("SPACETIME_GR_THREADS", threads[i], 1);
    SpacetimeGR<float> m(w.ctx, w.config, 1);
    digests[i] = RunStage(Quick(Stage::kPretrainSingle, 6), data, m).digest;
  }
  unsetenv("SPACETIME_GR_THREADS");
  EXPECT_EQ(digests[0], digests[1]);
  SpacetimeGR<float> m(w.ctx, w.config, 1);
  EXPECT_EQ(RunStage(Quick(Stage::kPretrainSingle, 6), data, m).digest, digests[0]);
}

TEST(RunStageTest, MemorizationLossDecreasesEveryStep) {
  World w = MakeWorld();
  data::Dataset ten(w.synth.dataset.begin(), w.synth.dataset.begin() + 10);
  SpacetimeGR<float> m(w.ctx, w.config, 2);
  StageConfig c = Quick(Stage::kPretrainSingle, 50);
  c.batch_size = 10;
  c.schedule.lr0 = 3e-3;
  c.schedule.min_lr = 1e-3;
  c.adam.clip_norm = 0.0;
  auto r = RunStage(c, StageData{&ten, nullptr}, m);
  ASSERT_EQ(r.losses.size(), 50u);
  for (std::size_t i = 1; i < r.losses.size(); ++i) {
    EXPECT_LT(r.losses[i], r.losses[i - 1]) << "step " << i + 1;
  }
}

TEST(RunStageTest, DpoWithZeroLearningRateIsAFixedPoint) {
  World w = MakeWorld();
  auto prefs = PairsFromRanking(w.synth.sft);
  SpacetimeGR<float> m(w.ctx, w.config, 3);
  const std::string before = m.params().Digest();
  StageConfig c = Quick(Stage::kDpo, 5);
  c.schedule.lr0 = 0.0;
  c.schedule.min_lr = 0.0;
  c.batch_size = static_cast<int>(prefs.samples.size());
  auto r = RunStage(c, StageData{nullptr, &prefs.samples}, m);
  const double expect = static_cast<double>(prefs.pairs.size()) * std::log(2.0);
  for (double l : r.losses) EXPECT_NEAR(l, expect, 1e-6 * expect);
  EXPECT_EQ(r.reference_before, r.reference_after);
  EXPECT_EQ(r.reference_before, before);
  EXPECT_EQ(m.params().Digest(), before);
}

TEST(RunStageTest, DpoReferenceStaysFrozenWhileTraining) {
  World w = MakeWorld();
  auto prefs = PairsFromRanking(w.synth.sft);
  SpacetimeGR<float> m(w.ctx, w.config, 3);
  const double margin_before = MeanPairMargin(m, prefs.samples);
  StageConfig c = Quick(Stage::kDpo, 20);
  c.schedule.lr0 = 1e-2;
  c.schedule.min_lr = 1e-3;
  auto r = RunStage(c, StageData{nullptr, &prefs.samples}, m);
  EXPECT_EQ(r.reference_before, r.reference_after);
  EXPECT_NE(r.digest, r.reference_before);
  EXPECT_GT(MeanPairMargin(m, prefs.samples), margin_before);
}

TEST(RunStageTest, SftStagesReduceTheirLoss) {
  World w = MakeWorld();
  for (Stage stage : {Stage::kSftEmb, Stage::kSftGen}) {
    SpacetimeGR<float> m(w.ctx, w.config, 6);
    StageConfig c = Quick(stage, 40);
    c.batch_size = static_cast<int>(w.synth.sft.size());
    auto r = RunStage(c, StageData{nullptr, &w.synth.sft}, m);
    EXPECT_LT(r.losses.back(), 0.8 * r.losses.front()) << StageName(stage);
  }
}

TEST(RunStageTest, MetricsLogAndNanAbortKeepLastCheckpoint) {
  World w = MakeWorld();
  const auto dir = std::filesystem::temp_directory_path() / "stgr_train_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  RunOptions opt;
  opt.checkpoint_dir = dir / "ckpt";
  opt.metrics_path = dir / "metrics.jsonl";
  opt.validate = [](const SpacetimeGR<float>&) {
    return std::map<std::string, double>{{"hr@1", 0.0}};
  };
  SpacetimeGR<float> m(w.ctx, w.config, 1);
  StageConfig c = Quick(Stage::kPretrainSingle, 0);
  c.epochs = 2;
  auto r = RunStage(c, StageData{&w.synth.dataset, nullptr}, m, opt);
  EXPECT_EQ(r.epochs, 2);

  std::ifstream in(opt.metrics_path);
  std::string line;
  int steps = 0, epochs = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    if (j.contains("step")) {
      ++steps;
      EXPECT_EQ(j["step"].get<int>(), steps);
      EXPECT_EQ(j["stage"], "pretrain_single");
      for (const char* k : {"loss", "lr", "wall_ms"}) EXPECT_TRUE(j.contains(k)) << k;
    } else {
      ++epochs;
      EXPECT_TRUE(j["validation"].contains("hr@1"));
    }
  }
  EXPECT_EQ(steps, r.steps);
  EXPECT_EQ(epochs, 2);

  // Poisoned weights: the stage aborts, the saved checkpoint survives.
  const std::string good = model::LoadCheckpoint(opt.checkpoint_dir).model.params().Digest();
  EXPECT_EQ(good, r.digest);
  m.params().value(m.ids().lm_head)[0] = std::nanf("");
  EXPECT_THROW(RunStage(c, StageData{&w.synth.dataset, nullptr}, m, opt), NumericError);
  EXPECT_EQ(model::LoadCheckpoint(opt.checkpoint_dir).model.params().Digest(), good);
  std::filesystem::remove_all(dir);
}

TEST(RunStageTest, EmptyStageDataIsAnError) {
  World w = MakeWorld();
  SpacetimeGR<float> m(w.ctx, w.config, 1);
  data::Dataset none;
  EXPECT_THROW(RunStage(Quick(Stage::kPretrainSingle, 1), StageData{&none, nullptr}, m),
               DataError);
  EXPECT_THROW(RunStage(Quick(Stage::kSftGen, 1), StageData{&none, nullptr}, m), UsageError);
}

}  // namespace
}  // namespace stgr::train
