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
#include <filesystem>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "stgr/common/error.h"
#include "stgr/model/checkpoint.h"
#include "stgr/model/spacetime_gr.h"
#include "support/toy.h"

namespace stgr::model {
namespace {

using testing::ContextFor;
using testing::SmallWorld;
using testing::TinyConfig;

struct World {
  data::SynthResult synth;
  ModelConfig config;
  std::shared_ptr<const ModelContext> ctx;
};

World MakeWorld(ModelConfig config, int pois = 40, int mm_dim = 0) {
  World w{SmallWorld(pois, 12, 7, mm_dim), config, nullptr};
  w.ctx = ContextFor(w.synth.catalog, w.config);
  return w;
}

ModelConfig CheckinConfig() {
  ModelConfig c = TinyConfig();
  c.mode = Mode::kCheckin;
  c.index_scheme = catalog::IndexScheme::kSingleLevel;
  return c;
}

data::RequestContext RequestOf(const data::Action& a) { return {a.t, a.g_u}; }

std::vector<catalog::PoiId> SomePois(const ModelContext& ctx, int n, std::uint64_t seed) {
  std::vector<catalog::PoiId> ids;
  for (const auto& p : ctx.catalog().pois()) ids.push_back(p.poi_id);
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(n);
  return ids;
}

data::SequenceSample TwoActions(const World& w, int it0, int it1) {
  data::SequenceSample s = w.synth.dataset[0];
  s.actions.resize(2);
  s.actions[0].interest = it0;
  s.actions[1].interest = it1;
  return s;
}

TEST(PretrainItemTest, LayoutArithmetic) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<float> m(w.ctx, w.config, 1);
  auto item = m.BuildPretrain(TwoActions(w, 1, 1));
  ASSERT_TRUE(item.has_value());
  EXPECT_EQ(item->tokens.size(), 3 + 8);
  ASSERT_EQ(item->rows.size(), 2u);
  // u_2 predicts block_2, block_2 predicts inner_2.
  EXPECT_EQ(item->rows[0], 3 + 4);
  EXPECT_EQ(item->rows[1], 3 + 5);
  const auto& f = w.ctx->Features(w.synth.dataset[0].actions[1].poi);
  EXPECT_EQ(item->targets[0], f.block_token);
  EXPECT_EQ(item->targets[1], f.inner_token);
}

TEST(PretrainItemTest, FunctionalActionsGiveNoTargets) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<float> m(w.ctx, w.config, 1);
  EXPECT_FALSE(m.BuildPretrain(TwoActions(w, 1, 0)).has_value());
  // The first action never has a target.
  EXPECT_FALSE(m.BuildPretrain(TwoActions(w, 0, 0)).has_value());
}

TEST(PretrainItemTest, TargetCountProperty) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<float> m(w.ctx, w.config, 1);
  std::mt19937_64 rng(3);
  for (auto s : w.synth.dataset) {
    for (auto& a : s.actions) a.interest = static_cast<int>(rng() % 2);
    int expect = 0;
    for (std::size_t i = 1; i < s.actions.size(); ++i) expect += 2 * s.actions[i].interest;
    auto item = m.BuildPretrain(s);
    EXPECT_EQ(item ? static_cast<int>(item->rows.size()) : 0, expect);
  }
}

TEST(PretrainItemTest, PerturbingFunctionalTargetLeavesLossUnchanged) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<double> m(w.ctx, w.config, 2);
  data::SequenceSample s = w.synth.dataset[1];
  s.actions.resize(5);
  for (auto& a : s.actions) a.interest = 1;
  s.actions[4].interest = 0;
  auto base = m.BuildPretrain(s);
  s.actions[4].poi = s.actions[2].poi;
  s.actions[4].g_p = s.actions[2].g_p;
  s.actions[4].category = s.actions[2].category;
  auto moved = m.BuildPretrain(s);
  // The last action is context only; changing it cannot change earlier rows.
  nn::Tape<double> t1(m.params(), nullptr), t2(m.params(), nullptr);
  EXPECT_EQ(t1.value(m.PretrainLoss(t1, *base, 1.0))[0],
            t2.value(m.PretrainLoss(t2, *moved, 1.0))[0]);
}

TEST(PretrainItemTest, TruncatesToMostRecentActions) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<float> m(w.ctx, w.config, 1);
  data::SequenceSample s = w.synth.dataset[0];
  std::vector<data::Action> longer;
  while (longer.size() < 200) {
    for (const auto& a : s.actions) {
      if (longer.size() < 200) longer.push_back(a);
    }
  }
  for (std::size_t i = 0; i < longer.size(); ++i) longer[i].t = s.actions[0].t + 60000LL * i;
  s.actions = longer;
  auto item = m.BuildPretrain(s);
  ASSERT_TRUE(item.has_value());
  EXPECT_EQ(item->num_actions, 128);
  EXPECT_EQ(item->tokens.size(), 3 + 4 * 128);
  data::SequenceSample tail = s;
  tail.actions.erase(tail.actions.begin(), tail.actions.begin() + 72);
  auto tail_item = m.BuildPretrain(tail);
  EXPECT_EQ(item->rows, tail_item->rows);
  EXPECT_EQ(item->targets, tail_item->targets);
  EXPECT_EQ(item->tokens.time_rows, tail_item->tokens.time_rows);
}

TEST(LmProbsTest, RowsSumToOne) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<float> m(w.ctx, w.config, 5);
  const auto& s = w.synth.dataset[2];
  auto p = m.LmProbs(m.Prefix(s.profile, s.actions, nullptr));
  for (int r = 0; r < p.rows(); ++r) {
    double sum = 0.0;
    for (int c = 0; c < p.cols(); ++c) sum += p(r, c);
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

TEST(LmProbsTest, ZeroHeadIsUniformAndLossIsLogV) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<double> m(w.ctx, w.config, 5);
  m.params().value(m.ids().lm_head).Fill(0.0);
  const auto& s = w.synth.dataset[2];
  auto p = m.LmProbs(m.Prefix(s.profile, s.actions, nullptr));
  for (double v : p.values()) EXPECT_NEAR(v, 1.0 / m.vocab_size(), 1e-15);
  auto item = m.BuildPretrain(s);
  ASSERT_TRUE(item.has_value());
  nn::Tape<double> tape(m.params(), nullptr);
  const double loss =
      tape.value(m.PretrainLoss(tape, *item, 1.0 / item->rows.size()))[0];
  EXPECT_NEAR(loss, std::log(static_cast<double>(m.vocab_size())), 1e-12);
}

TEST(EmbedTest, ZeroMixLogitsWeighHalf) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<double> m(w.ctx, w.config, 9);
  const data::Action& a = w.synth.dataset[0].actions[0];
  TokenSeq seq;
  m.AppendUser(seq, a.t, a.g_u);
  nn::Tape<double> tape(m.params(), nullptr);
  const auto& e = tape.value(m.Embed(tape, seq));
  const auto time_rows = TimeRows(a.t);
  const auto geo_rows = w.ctx->GeoRows(a.g_u);
  const auto& et = m.params().value(m.ids().emb_time);
  const auto& eg = m.params().value(m.ids().emb_geo);
  const int ts = w.config.time_sub_dim, gs = w.config.geo_dim;
  for (int c = 0; c < w.config.decoder.dim; ++c) {
    const double t = et(time_rows[c / ts], c % ts);
    const double g = eg(geo_rows[c / gs], c % gs);
    EXPECT_NEAR(e(0, c), 0.5 * t + 0.5 * g, 1e-15);
  }
}

TEST(EmbedTest, MixStaysOnSimplexForAnyLogits) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<double> m(w.ctx, w.config, 9);
  auto& mix = m.params().value(m.ids().mix_p);
  mix(0, 0) = 40.0;
  mix(0, 1) = -25.0;
  mix(0, 2) = 3.0;
  const auto& f = w.ctx->all_features()[3];
  TokenSeq seq;
  m.AppendInner(seq, f);
  nn::Tape<double> tape(m.params(), nullptr);
  const auto& e = tape.value(m.Embed(tape, seq));
  const double z = std::exp(40.0) + std::exp(-25.0) + std::exp(3.0);
  const double w3 = std::exp(40.0) / z, w4 = std::exp(-25.0) / z, w5 = std::exp(3.0) / z;
  EXPECT_NEAR(w3 + w4 + w5, 1.0, 1e-15);
  const auto& ep = m.params().value(m.ids().emb_poi);
  const auto& ec = m.params().value(m.ids().emb_cat);
  const auto& eg = m.params().value(m.ids().emb_geo);
  const int gs = w.config.geo_dim;
  for (int c = 0; c < w.config.decoder.dim; ++c) {
    const double expect = w3 * ep(f.inner_token, c) + w4 * ec(f.category, c) +
                          w5 * eg(f.geo_rows[c / gs], c % gs);
    EXPECT_NEAR(e(0, c), expect, 1e-12);
  }
}

TEST(EmbedTest, UserLocationOnlyMovesUserToken) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<double> m(w.ctx, w.config, 9);
  data::SequenceSample s = w.synth.dataset[0];
  s.actions.resize(1);
  data::SequenceSample far = s;
  far.actions[0].g_u.lon += 1.5;
  nn::Tape<double> t1(m.params(), nullptr), t2(m.params(), nullptr);
  const auto e1 = t1.value(m.Embed(t1, m.Prefix(s.profile, s.actions, nullptr)));
  const auto e2 = t2.value(m.Embed(t2, m.Prefix(far.profile, far.actions, nullptr)));
  auto row_equal = [&](int r) {
    return std::equal(e1.row(r), e1.row(r) + e1.cols(), e2.row(r));
  };
  EXPECT_FALSE(row_equal(3));  // u
  EXPECT_TRUE(row_equal(4));   // block
  EXPECT_TRUE(row_equal(5));   // inner
  EXPECT_TRUE(row_equal(6));   // action
}

class RankTest : public ::testing::Test {
 protected:
  void SetUp() override {
    world_ = MakeWorld(TinyConfig());
    const auto& s = world_.synth.dataset[3];
    profile_ = s.profile;
    history_.assign(s.actions.begin(), s.actions.end() - 1);
    request_ = RequestOf(s.actions.back());
  }
  World world_;
  data::UserProfile profile_;
  std::vector<data::Action> history_;
  data::RequestContext request_;
};

TEST_F(RankTest, PermutationInvariantProperty) {
  SpacetimeGR<float> m(world_.ctx, world_.config, 11);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 15);
    auto cands = SomePois(*world_.ctx, k, rng());
    auto base = m.RankCandidates(profile_, history_, request_, cands);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<catalog::PoiId> shuffled(k);
    for (int i = 0; i < k; ++i) shuffled[i] = cands[perm[i]];
    auto moved = m.RankCandidates(profile_, history_, request_, shuffled);
    for (int i = 0; i < k; ++i) {
      EXPECT_NEAR(moved[i], base[perm[i]], 1e-5);
      EXPECT_GT(moved[i], 0.0f);
      EXPECT_LT(moved[i], 1.0f);
    }
  }
}

TEST_F(RankTest, SingleCandidateMatchesIsolatedRun) {
  SpacetimeGR<double> m(world_.ctx, world_.config, 11);
  auto cands = SomePois(*world_.ctx, 6, 4);
  auto together = m.RankCandidates(profile_, history_, request_, cands);
  for (int i = 0; i < 6; ++i) {
    auto alone = m.RankCandidates(profile_, history_, request_, {cands[i]});
    EXPECT_EQ(alone[0], together[i]);
  }
  // The isolated path is the causal forward of prefix + candidate.
  TokenSeq seq = m.Prefix(profile_, history_, &request_);
  m.AppendPoi(seq, world_.ctx->Features(cands[0]));
  const int n = seq.size();
  std::vector<int> pos(n);
  std::iota(pos.begin(), pos.end(), 0);
  nn::Tape<double> tape(m.params(), nullptr);
  auto h = m.Hidden(tape, seq, nn::AttentionMask::Causal(n), pos);
  auto z = tape.Linear(tape.Arrange({h}, {{0, n - 1}}), m.ids().cls);
  EXPECT_NEAR(1.0 / (1.0 + std::exp(-tape.value(z)[0])), together[0], 1e-14);
}

TEST_F(RankTest, DuplicatedCandidateScoresEqual) {
  SpacetimeGR<float> m(world_.ctx, world_.config, 11);
  auto cands = SomePois(*world_.ctx, 4, 5);
  cands.push_back(cands[1]);
  auto p = m.RankCandidates(profile_, history_, request_, cands);
  EXPECT_EQ(p[1], p[4]);
}

TEST_F(RankTest, EmptyCandidateListIsAnError) {
  SpacetimeGR<float> m(world_.ctx, world_.config, 11);
  EXPECT_THROW(m.RankCandidates(profile_, history_, request_, {}), UsageError);
  EXPECT_THROW(m.RankCandidates(profile_, history_, request_, {-5}), LookupError);
}

TEST_F(RankTest, JointLogProbMatchesTwoStepEnumeration) {
  World w = MakeWorld(TinyConfig(), 20);
  SpacetimeGR<double> m(w.ctx, w.config, 13);
  const auto& s = w.synth.dataset[0];
  std::vector<data::Action> hist(s.actions.begin(), s.actions.end() - 1);
  const data::RequestContext req = RequestOf(s.actions.back());
  std::vector<catalog::PoiId> all;
  for (const auto& f : w.ctx->all_features()) all.push_back(f.poi_id);
  nn::Tape<double> tape(m.params(), nullptr);
  const auto joint = tape.value(m.JointLogProb(tape, s.profile, hist, req, all));
  double mass = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& f = w.ctx->Features(all[i]);
    TokenSeq seq = m.Prefix(s.profile, hist, &req);
    const int L = seq.size();
    m.AppendBlock(seq, f.block_token);
    const auto p = m.LmProbs(seq);
    const double expect = std::log(p(L - 1, f.block_token)) + std::log(p(L, f.inner_token));
    EXPECT_NEAR(joint[i], expect, 1e-10);
    EXPECT_LT(joint[i], 0.0);
    mass += std::exp(joint[i]);
  }
  EXPECT_LE(mass, 1.0);
}

TEST(TowerTest, ShapesAndDeterminism) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<float> m(w.ctx, w.config, 3);
  const auto& s = w.synth.dataset[0];
  const data::RequestContext req = RequestOf(s.actions.back());
  nn::Tape<float> tape(m.params(), nullptr);
  auto u1 = tape.value(m.UserTower(tape, s.profile, s.actions, req));
  auto u2 = tape.value(m.UserTower(tape, s.profile, {s.actions.begin(), s.actions.begin() + 2}, req));
  EXPECT_EQ(u1.cols(), w.config.embed_dim);
  EXPECT_EQ(u2.cols(), w.config.embed_dim);
  EXPECT_EQ(u1, tape.value(m.UserTower(tape, s.profile, s.actions, req)));
  // Two POIs of the same block get different vectors.
  const auto& idx = w.ctx->index();
  int block = -1;
  for (int b = 0; b < idx.num_blocks() && block < 0; ++b) {
    if (idx.block_size(b) >= 2) block = b;
  }
  ASSERT_GE(block, 0);
  const auto& ids = idx.pois_of_block(block);
  auto p = tape.value(m.PoiTower(tape, {ids[0], ids[1], ids[0]}));
  ASSERT_EQ(p.rows(), 3);
  EXPECT_FALSE(std::equal(p.row(0), p.row(0) + p.cols(), p.row(1)));
  EXPECT_TRUE(std::equal(p.row(0), p.row(0) + p.cols(), p.row(2)));
}

TEST(MultimodalTest, ZeroVectorIsIdentityAndOnlyItsCandidateMoves) {
  ModelConfig c = TinyConfig();
  c.multimodal = true;
  World w = MakeWorld(c, 40, 5);
  ASSERT_EQ(w.ctx->catalog().mm_dim(), 5);
  SpacetimeGR<double> m(w.ctx, w.config, 21);
  const auto& s = w.synth.dataset[0];
  std::vector<data::Action> hist(s.actions.begin(), s.actions.end() - 1);
  const data::RequestContext req = RequestOf(s.actions.back());
  std::vector<catalog::PoiId> cands;
  for (catalog::PoiId id : SomePois(*w.ctx, 40, 8)) {
    const bool seen = std::any_of(hist.begin(), hist.end(),
                                  [&](const data::Action& a) { return a.poi == id; });
    if (!seen && cands.size() < 4) cands.push_back(id);
  }
  auto base = m.RankCandidates(s.profile, hist, req, cands);

  // Drop the vector of candidate 2 from a copy of the catalog.
  std::vector<catalog::Poi> pois = w.ctx->catalog().pois();
  for (auto& p : pois) {
    if (p.poi_id == cands[2]) p.mm_vector.assign(5, 0.0f);
  }
  auto ctx2 = ModelContext::FromParts(catalog::Catalog::FromPois(pois), w.ctx->index(), c);
  SpacetimeGR<double> m2(ctx2, c, m.params());
  auto moved = m2.RankCandidates(s.profile, hist, req, cands);
  for (int i = 0; i < 4; ++i) {
    if (i == 2) {
      EXPECT_NE(moved[i], base[i]);
    } else {
      EXPECT_EQ(moved[i], base[i]);
    }
  }
  // A zero vector behaves like no vector at all.
  m2.params().value(m2.ids().mm_proj).Fill(0.0);
  SpacetimeGR<double> m3(w.ctx, c, m2.params());
  EXPECT_EQ(m2.RankCandidates(s.profile, hist, req, cands)[2],
            m3.RankCandidates(s.profile, hist, req, cands)[2]);
}

TEST(CheckinModeTest, TwoTokensPerActionAndOneTargetPerAction) {
  World w = MakeWorld(CheckinConfig());
  SpacetimeGR<float> m(w.ctx, w.config, 1);
  EXPECT_EQ(w.ctx->vocab().num_blocks(), 0);
  EXPECT_EQ(m.params().Find("emb_act"), -1);
  auto item = m.BuildPretrain(TwoActions(w, 1, 1));
  ASSERT_TRUE(item.has_value());
  EXPECT_EQ(item->tokens.size(), 3 + 4);
  ASSERT_EQ(item->rows.size(), 1u);
  EXPECT_EQ(item->rows[0], 5);
}

TEST(CheckinModeTest, IgnoresUserLocationAndActionType) {
  World w = MakeWorld(CheckinConfig());
  SpacetimeGR<double> m(w.ctx, w.config, 1);
  const auto& s = w.synth.dataset[4];
  std::vector<data::Action> hist(s.actions.begin(), s.actions.end() - 1);
  data::RequestContext req = RequestOf(s.actions.back());
  auto cands = SomePois(*w.ctx, 5, 2);
  std::vector<data::Action> moved = hist;
  for (auto& a : moved) {
    a.g_u.lat = -a.g_u.lat;
    a.action_type = data::ActionType::kFavorite;
  }
  data::RequestContext moved_req = req;
  moved_req.g.lon += 3.0;
  EXPECT_EQ(m.RankCandidates(s.profile, hist, req, cands),
            m.RankCandidates(s.profile, moved, moved_req, cands));
  nn::Tape<double> t1(m.params(), nullptr), t2(m.params(), nullptr);
  EXPECT_EQ(t1.value(m.JointLogProb(t1, s.profile, hist, req, cands)),
            t2.value(m.JointLogProb(t2, s.profile, moved, moved_req, cands)));
  EXPECT_EQ(t1.value(m.UserTower(t1, s.profile, hist, req)),
            t2.value(m.UserTower(t2, s.profile, moved, moved_req)));
  EXPECT_EQ(m.PrefixLogits(s.profile, hist, req), m.PrefixLogits(s.profile, moved, moved_req));
}

TEST(ConfigTest, RejectsInconsistentWidths) {
  ModelConfig c = TinyConfig();
  c.time_sub_dim = 5;
  EXPECT_THROW(c.Validate(), UsageError);
  c = TinyConfig();
  c.geo_levels = 3;
  EXPECT_THROW(c.Validate(), UsageError);
  c = TinyConfig();
  c.mode = Mode::kCheckin;
  EXPECT_THROW(c.Validate(), UsageError);
  EXPECT_NO_THROW(ModelConfig::FullScale().Validate());
}

TEST(ConfigTest, KeyValuesRoundTrip) {
  ModelConfig c = TinyConfig();
  c.multimodal = true;
  c.mode = Mode::kCheckin;
  c.index_scheme = catalog::IndexScheme::kSingleLevel;
  ModelConfig back;
  for (const auto& [k, v] : c.ToKeyValues()) {
    std::string bad;
    ASSERT_TRUE(back.Set(k, v, &bad)) << bad;
  }
  EXPECT_EQ(back.ToKeyValues(), c.ToKeyValues());
  std::string bad;
  EXPECT_FALSE(back.Set("no_such_key", "1", &bad));
  EXPECT_EQ(bad, "no_such_key");
}

TEST(CheckpointTest, RoundTripIsBitExact) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<float> m(w.ctx, w.config, 17);
  const auto dir = std::filesystem::temp_directory_path() / "stgr_ckpt_test";
  std::filesystem::remove_all(dir);
  SaveCheckpoint(m, dir, {{"stage", "pretrain_single"}});
  SaveCheckpoint(m, dir, {{"stage", "pretrain_single"}});  // overwrite in place
  LoadedCheckpoint loaded = LoadCheckpoint(dir);
  EXPECT_EQ(loaded.meta.at("stage"), "pretrain_single");
  ASSERT_EQ(loaded.model.params().size(), m.params().size());
  for (int i = 0; i < m.params().size(); ++i) {
    EXPECT_EQ(loaded.model.params().name(i), m.params().name(i));
    EXPECT_EQ(loaded.model.params().value(i), m.params().value(i));
  }
  EXPECT_EQ(loaded.model.params().Digest(), m.params().Digest());
  const auto& s = w.synth.dataset[0];
  const data::RequestContext req = RequestOf(s.actions.back());
  auto cands = SomePois(*w.ctx, 3, 1);
  EXPECT_EQ(loaded.model.RankCandidates(s.profile, s.actions, req, cands),
            m.RankCandidates(s.profile, s.actions, req, cands));
  std::filesystem::remove_all(dir);
}

TEST(CheckpointTest, CorruptTensorIsDataError) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<float> m(w.ctx, w.config, 17);
  const auto dir = std::filesystem::temp_directory_path() / "stgr_ckpt_corrupt";
  std::filesystem::remove_all(dir);
  SaveCheckpoint(m, dir);
  std::filesystem::resize_file(dir / "cls.bin", 10);
  EXPECT_THROW(LoadCheckpoint(dir), DataError);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(LoadCheckpoint(dir), DataError);
}

TEST(ModelTest, WrongParameterShapesAreRejected) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<float> m(w.ctx, w.config, 1);
  nn::ParameterSet<float> p = m.params();
  p.value(p.Id("cls")) = nn::Matrix<float>(3, 1);
  EXPECT_THROW(SpacetimeGR<float>(w.ctx, w.config, p), DataError);
}

TEST(ModelTest, SameSeedSameParameters) {
  World w = MakeWorld(TinyConfig());
  SpacetimeGR<float> a(w.ctx, w.config, 42), b(w.ctx, w.config, 42), c(w.ctx, w.config, 43);
  EXPECT_EQ(a.params().Digest(), b.params().Digest());
  EXPECT_NE(a.params().Digest(), c.params().Digest());
}

}  // namespace
}  // namespace stgr::model
