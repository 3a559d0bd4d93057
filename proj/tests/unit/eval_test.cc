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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "stgr/common/error.h"
#include "stgr/eval/ablation.h"
#include "stgr/eval/evaluate.h"
#include "stgr/eval/metrics.h"
#include "stgr/eval/report.h"
#include "support/toy.h"

namespace stgr::eval {
namespace {

data::Action ActionAt(PoiId poi, int day, int hour = 12) {
  data::Action a;
  a.t = data::MakeTimestamp(2024, 3, day, hour);
  a.poi = poi;
  a.g_u = {39.9, 116.4};
  a.g_p = {39.9, 116.4};
  a.category = {"food"};
  return a;
}

TEST(HitRateTest, CountsHits) {
  const std::vector<std::vector<PoiId>> pred = {{1, 2}, {3, 4}, {5, 6}, {7, 8}};
  EXPECT_DOUBLE_EQ(HitRate(pred, {1, 4, 9, 9}, 2), 0.5);
  EXPECT_DOUBLE_EQ(HitRate(pred, {1, 4, 9, 9}, 1), 0.25);
}

TEST(HitRateTest, ExhaustiveListHitsEverything) {
  const std::vector<PoiId> all = {3, 1, 2};
  EXPECT_DOUBLE_EQ(HitRate({all, all, all}, {1, 2, 3}, 10), 1.0);
}

TEST(HitRateTest, AnyOfTargets) {
  EXPECT_DOUBLE_EQ(HitRateAnyOf({{1, 2}, {3, 4}}, {{9, 2}, {8, 7}}, 2), 0.5);
}

TEST(HitRateTest, RejectsBadInput) {
  EXPECT_THROW(HitRate({}, {}, 1), UsageError);
  EXPECT_THROW(HitRate({{1}}, {1}, 0), UsageError);
  EXPECT_THROW(HitRate({{1}}, {1, 2}, 1), UsageError);
}

TEST(HitRateTest, NestingHoldsOnRandomInstances) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int positions = 1 + static_cast<int>(rng() % 20);
    std::vector<std::vector<PoiId>> pred(positions);
    std::vector<PoiId> targets(positions);
    for (int i = 0; i < positions; ++i) {
      std::vector<PoiId> pool(150);
      for (int j = 0; j < 150; ++j) pool[j] = j;
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(rng() % 120);
      pred[i] = pool;
      targets[i] = static_cast<PoiId>(rng() % 150);
    }
    const double h1 = HitRate(pred, targets, 1);
    const double h10 = HitRate(pred, targets, 10);
    const double h100 = HitRate(pred, targets, 100);
    ASSERT_LE(h1, h10);
    ASSERT_LE(h10, h100);
    ASSERT_GE(h1, 0.0);
    ASSERT_LE(h100, 1.0);
  }
}

TEST(AucTest, WorkedExamples) {
  EXPECT_DOUBLE_EQ(*Auc({0.9, 0.8, 0.1}, {1, 0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(*Auc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(*Auc({0.3, 0.3, 0.3, 0.3}, {1, 0, 1, 0}), 0.5);
}

TEST(AucTest, SingleClassIsAbsent) {
  EXPECT_FALSE(Auc({0.1, 0.2}, {1, 1}).has_value());
  EXPECT_FALSE(Auc({0.1, 0.2}, {0, 0}).has_value());
  EXPECT_FALSE(Auc({}, {}).has_value());
  EXPECT_FALSE(AucPairwise({0.5}, {1}).has_value());
}

TEST(AucTest, RejectsBadLabels) {
  EXPECT_THROW(Auc({0.1}, {2}), UsageError);
  EXPECT_THROW(Auc({0.1, 0.2}, {1}), UsageError);
}

TEST(AucTest, MatchesPairCountingExactly) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 999);
    // Coarse score levels force many ties.
    const int levels = 1 + static_cast<int>(rng() % 50);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng() % levels) / levels;
      labels[i] = static_cast<int>(rng() % 2);
    }
    const auto fast = Auc(scores, labels);
    const auto slow = AucPairwise(scores, labels);
    ASSERT_EQ(fast.has_value(), slow.has_value());
    if (fast) {
      ASSERT_EQ(*fast, *slow) << "trial " << trial;
    }
  }
}

TEST(DiscoveryTest, EmptyHistoryIsFullDiscovery) {
  EXPECT_DOUBLE_EQ(DiscoveryRate({1, 2, 3}, {}, 3, 7), 1.0);
}

TEST(DiscoveryTest, CountsSeenInWindow) {
  std::vector<PoiId> recs = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<data::Action> history = {ActionAt(1, 1), ActionAt(2, 2), ActionAt(3, 2),
                                       ActionAt(42, 3)};
  EXPECT_DOUBLE_EQ(DiscoveryRate(recs, history, 10, 3), 0.7);
  // Only day 3 is in a one-day window.
  EXPECT_DOUBLE_EQ(DiscoveryRate(recs, history, 10, 1), 1.0);
  EXPECT_DOUBLE_EQ(DiscoveryRate(recs, history, 10, 2), 0.8);
  // k truncates the list.
  EXPECT_DOUBLE_EQ(DiscoveryRate(recs, history, 2, 3), 0.0);
  EXPECT_DOUBLE_EQ(DiscoveryRate(recs, history, 10, 0), 1.0);
}

TEST(DiscoveryTest, ActiveDaysSkipGaps) {
  // Days 1 and 20 are the two most recent active days despite the gap.
  std::vector<data::Action> history = {ActionAt(5, 1), ActionAt(6, 20)};
  EXPECT_DOUBLE_EQ(DiscoveryRate({5, 6}, history, 2, 2), 0.0);
}

TEST(DiscoveryTest, NonIncreasingInWindowOnRandomInstances) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<data::Action> history;
    const int n = static_cast<int>(rng() % 30);
    std::vector<int> days;
    for (int i = 0; i < n; ++i) days.push_back(1 + static_cast<int>(rng() % 28));
    std::sort(days.begin(), days.end());
    for (int d : days) history.push_back(ActionAt(static_cast<PoiId>(rng() % 20), d));
    std::vector<PoiId> recs;
    for (int i = 0; i < 10; ++i) recs.push_back(static_cast<PoiId>(rng() % 20));
    const int k = 1 + static_cast<int>(rng() % 10);
    double prev = 1.0;
    for (int m = 0; m <= 30; ++m) {
      const double d = DiscoveryRate(recs, history, k, m);
      ASSERT_GE(d, 0.0);
      ASSERT_LE(d, prev + 1e-15);
      prev = d;
    }
  }
}

TEST(PositionsTest, PoliciesAndInterestFlags) {
  data::SequenceSample seq;
  seq.user_id = "u";
  for (int d = 1; d <= 6; ++d) seq.actions.push_back(ActionAt(d, d));
  seq.actions[2].interest = 0;
  data::Dataset ds = {seq};
  data::SequenceSample single;
  single.actions.push_back(ActionAt(1, 1));
  ds.push_back(single);

  const auto every = MakePositions(ds, PositionPolicy::kEveryAction);
  ASSERT_EQ(every.size(), 4u);  // actions 2..6 without the functional one
  EXPECT_EQ(every[0].history.size(), 1u);
  EXPECT_EQ(every[0].target, 2);
  EXPECT_EQ(every[1].target, 4);
  EXPECT_EQ(every[1].request.t, seq.actions[3].t);
  EXPECT_EQ(every[0].target_top_level, "food");

  const auto last = MakePositions(ds, PositionPolicy::kLastAction);
  ASSERT_EQ(last.size(), 1u);
  EXPECT_EQ(last[0].target, 6);
  EXPECT_EQ(last[0].history.size(), 5u);

  const auto any = MakeAnyOfPositions(ds, 5);
  ASSERT_EQ(any.size(), 1u);
  EXPECT_EQ(any[0].history.size(), 1u);
  EXPECT_EQ(any[0].any_of, (std::vector<PoiId>{2, 3, 4, 5, 6}));
}

class EvalModelTest : public ::testing::Test {
 protected:
  void SetUp() override {
    world_ = testing::SmallWorld(40, 12, 5, 0, 1);
    setup_.catalog = world_.catalog;
    setup_.train = world_.dataset;
    setup_.positions = MakePositions(world_.dataset, PositionPolicy::kLastAction);
    setup_.base_config = testing::TinyConfig();
    setup_.pretrain.max_steps = 3;
    setup_.pretrain.batch_size = 4;
    setup_.seed = 9;
    setup_.eval.discovery_k = {1, 10};
    setup_.eval.discovery_m = {1, 3, 7};
  }
  data::SynthResult world_;
  AblationSetup setup_;
};

TEST_F(EvalModelTest, MetricsAreNestedAndBounded) {
  const auto model = TrainVariant(setup_, setup_.base_config, true);
  const EvalRow row = Evaluate(model, setup_.positions, setup_.eval);
  EXPECT_EQ(row.positions, static_cast<int>(setup_.positions.size()));
  EXPECT_LE(row.hr1, row.hr10);
  EXPECT_LE(row.hr10, row.hr100);
  EXPECT_LE(row.hr100, 1.0);
  EXPECT_GE(row.category_acc, 0.0);
  EXPECT_LE(row.category_acc, 1.0);
  ASSERT_EQ(row.discovery.size(), 6u);
  for (int k : {1, 10}) {
    EXPECT_GE(row.discovery.at({k, 1}), row.discovery.at({k, 3}));
    EXPECT_GE(row.discovery.at({k, 3}), row.discovery.at({k, 7}));
  }
  const auto auc = RankingAuc(model, world_.sft);
  ASSERT_TRUE(auc.has_value());
  EXPECT_GE(*auc, 0.0);
  EXPECT_LE(*auc, 1.0);
  EXPECT_THROW(Evaluate(model, {}, setup_.eval), UsageError);
}

TEST_F(EvalModelTest, ZeroDeltasEqualTheBaseRun) {
  const EvalReport report = RunAblation(setup_, {});
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.rows[0].name, "base");
  const auto model = TrainVariant(setup_, setup_.base_config, setup_.curriculum);
  EvalReport direct;
  direct.rows.push_back(Evaluate(model, setup_.positions, setup_.eval));
  direct.rows[0].name = "base";
  EXPECT_EQ(ReportDigest(report), ReportDigest(direct));
}

TEST_F(EvalModelTest, DeltasProduceOneRowEach) {
  std::vector<AblationDelta> deltas = StandardDeltas();
  ASSERT_EQ(deltas.size(), 8u);
  // A short sweep keeps the test quick.
  deltas.erase(deltas.begin() + 3, deltas.begin() + 6);
  setup_.sft_train = world_.sft;
  setup_.sft_test = world_.sft;
  setup_.sft_gen.max_steps = 2;
  const EvalReport report = RunAblation(setup_, deltas);
  ASSERT_EQ(report.rows.size(), 6u);
  EXPECT_EQ(report.rows[1].name, "w/o spatiotemporal");
  EXPECT_EQ(report.rows[4].max_len, 256);
  for (const auto& row : report.rows) {
    EXPECT_TRUE(row.auc.has_value()) << row.name;
    EXPECT_LE(row.hr1, row.hr10);
  }

  const std::string table = FormatTable(report);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 7);
  EXPECT_NE(table.find("name|max_len|positions|hr@1|hr@10|hr@100"), std::string::npos);
  const std::string jsonl = ToJsonl(report);
  EXPECT_EQ(std::count(jsonl.begin(), jsonl.end(), '\n'), 6);
  const std::string sweep = LengthSweepCsv(report);
  EXPECT_EQ(sweep.rfind("max_len,hr1,hr10,hr100\n256,", 0), 0u);
  EXPECT_EQ(std::count(sweep.begin(), sweep.end(), '\n'), 2);
  const std::string disc = DiscoveryCsv(report);
  EXPECT_EQ(std::count(disc.begin(), disc.end(), '\n'), 1 + 6 * 6);
}

TEST(ReportTest, DigestIgnoresRuntime) {
  EvalReport a;
  EvalRow row;
  row.name = "x";
  row.hr1 = 0.5;
  a.rows.push_back(row);
  EvalReport b = a;
  b.rows[0].runtime_ms = 123.0;
  EXPECT_EQ(ReportDigest(a), ReportDigest(b));
  b.rows[0].hr1 = 0.25;
  EXPECT_NE(ReportDigest(a), ReportDigest(b));
}

}  // namespace
}  // namespace stgr::eval
