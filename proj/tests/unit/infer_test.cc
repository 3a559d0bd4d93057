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

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>

#include "httplib.h"
#include "json.hpp"
#include "stgr/common/error.h"
#include "stgr/data/io.h"
#include "stgr/infer/decode.h"
#include "stgr/infer/export.h"
#include "stgr/infer/service.h"
#include "support/toy.h"

namespace stgr::infer {
namespace {

using model::SpacetimeGR;
using nlohmann::json;

struct World {
  data::SynthResult synth;
  model::ModelConfig config;
  std::shared_ptr<const model::ModelContext> ctx;
  std::shared_ptr<SpacetimeGR<float>> model;
};

World MakeWorld(model::ModelConfig config, int pois = 50) {
  World w{testing::SmallWorld(pois, 8, 5), config, nullptr, nullptr};
  w.ctx = testing::ContextFor(w.synth.catalog, w.config);
  w.model = std::make_shared<SpacetimeGR<float>>(w.ctx, w.config, 3);
  return w;
}

RecommendRequest RequestFrom(const data::SequenceSample& s, int k, int wb = 10, int wi = 10) {
  RecommendRequest r;
  r.profile = s.profile;
  r.actions.assign(s.actions.begin(), s.actions.end() - 1);
  r.t_req = s.actions.back().t;
  r.g_req = s.actions.back().g_u;
  r.k = k;
  r.w_block = wb;
  r.w_inner = wi;
  return r;
}

json RequestJson(const RecommendRequest& r) {
  json j;
  j["profile"] = data::ProfileToJson(r.profile);
  j["actions"] = data::ActionsToJson(r.actions);
  j["t_req"] = r.t_req;
  j["g_req"] = data::PointToJson(r.g_req);
  j["k"] = r.k;
  return j;
}

TEST(BeamTest, FullWidthsEqualTheOracle) {
  World w = MakeWorld(testing::TinyConfig());
  const auto& idx = w.ctx->index();
  for (const auto& s : w.synth.dataset) {
    auto req = RequestFrom(s, idx.num_pois(), idx.num_blocks(), idx.max_block_size());
    auto beam = BeamDecode(req, *w.model);
    auto oracle = ExhaustiveOracle(req, *w.model);
    ASSERT_EQ(beam.items.size(), oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      EXPECT_EQ(beam.items[i].poi_id, oracle[i].poi_id);
      EXPECT_EQ(beam.items[i].joint_prob, oracle[i].joint_prob);
    }
    EXPECT_TRUE(beam.warnings.empty());
  }
}

TEST(BeamTest, OracleCoversEveryPoiOnce) {
  World w = MakeWorld(testing::TinyConfig());
  auto oracle = ExhaustiveOracle(RequestFrom(w.synth.dataset[0], 1), *w.model);
  std::set<catalog::PoiId> seen;
  double mass = 0.0;
  for (const auto& r : oracle) {
    seen.insert(r.poi_id);
    EXPECT_GT(r.joint_prob, 0.0);
    EXPECT_LE(r.joint_prob, 1.0);
    EXPECT_EQ(w.ctx->index().Decode(r.block, r.inner), r.poi_id);
    mass += r.joint_prob;
  }
  EXPECT_EQ(seen.size(), w.synth.catalog.size());
  EXPECT_LE(mass, 1.0);
}

TEST(BeamTest, ResultsSortedAndWiderBeamsCoverMore) {
  World w = MakeWorld(testing::TinyConfig());
  const auto& s = w.synth.dataset[1];
  std::vector<Recommendation> prev;
  for (int width = 1; width <= 6; ++width) {
    auto res = BeamDecode(RequestFrom(s, 1000, width, width), *w.model);
    for (std::size_t i = 1; i < res.items.size(); ++i) {
      EXPECT_GE(res.items[i - 1].joint_prob, res.items[i].joint_prob);
    }
    // Every earlier candidate is still generated, with the same probability.
    for (const auto& p : prev) {
      auto it = std::find_if(res.items.begin(), res.items.end(),
                             [&](const Recommendation& r) { return r.poi_id == p.poi_id; });
      ASSERT_NE(it, res.items.end());
      EXPECT_EQ(it->joint_prob, p.joint_prob);
    }
    prev = res.items;
  }
}

TEST(BeamTest, UniformModelBreaksTiesByTokenId) {
  World w = MakeWorld(testing::TinyConfig());
  SpacetimeGR<float> flat = *w.model;
  flat.params().value(flat.ids().lm_head).Fill(0.0f);
  const auto& idx = w.ctx->index();
  auto req = RequestFrom(w.synth.dataset[0], idx.num_pois(), idx.num_blocks(),
                         idx.max_block_size());
  auto res = BeamDecode(req, flat);
  for (std::size_t i = 1; i < res.items.size(); ++i) {
    EXPECT_EQ(res.items[i].joint_prob, res.items[0].joint_prob);
    const auto& a = res.items[i - 1];
    const auto& b = res.items[i];
    EXPECT_TRUE(a.block_token < b.block_token ||
                (a.block_token == b.block_token && a.inner_token < b.inner_token));
  }
  // Narrow beams pick the lowest token ids too.
  auto narrow = BeamDecode(RequestFrom(w.synth.dataset[0], 3, 1, 3), flat);
  ASSERT_EQ(narrow.items.size(), 3u);
  EXPECT_EQ(narrow.items[0].block, 0);
  EXPECT_EQ(narrow.items[0].inner, 1);
}

TEST(BeamTest, TooFewCandidatesReturnsAllWithWarning) {
  World w = MakeWorld(testing::TinyConfig());
  auto res = BeamDecode(RequestFrom(w.synth.dataset[0], 50, 1, 1), *w.model);
  EXPECT_EQ(res.items.size(), 1u);
  ASSERT_EQ(res.warnings.size(), 1u);
  EXPECT_THROW(BeamDecode(RequestFrom(w.synth.dataset[0], 0), *w.model), UsageError);
  EXPECT_THROW(BeamDecode(RequestFrom(w.synth.dataset[0], 5, 0, 3), *w.model), UsageError);
}

TEST(BeamTest, OnlyRetainedHistoryMatters) {
  model::ModelConfig c = testing::TinyConfig();
  c.max_len = 4;
  World w = MakeWorld(c);
  auto req = RequestFrom(w.synth.dataset[2], 5);
  ASSERT_GT(req.actions.size(), 4u);
  auto cut = req;
  cut.actions.erase(cut.actions.begin(), cut.actions.end() - 4);
  auto a = BeamDecode(req, *w.model).items;
  auto b = BeamDecode(cut, *w.model).items;
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].poi_id, b[i].poi_id);
    EXPECT_EQ(a[i].joint_prob, b[i].joint_prob);
  }
}

TEST(BeamTest, CheckinModeDecodesSingleLevelTokens) {
  model::ModelConfig c = testing::TinyConfig();
  c.mode = model::Mode::kCheckin;
  c.index_scheme = catalog::IndexScheme::kSingleLevel;
  World w = MakeWorld(c);
  auto req = RequestFrom(w.synth.dataset[0], 5);
  auto res = BeamDecode(req, *w.model);
  ASSERT_EQ(res.items.size(), 5u);
  auto oracle = ExhaustiveOracle(req, *w.model);
  ASSERT_EQ(oracle.size(), w.synth.catalog.size());
  for (int i = 0; i < 5; ++i) EXPECT_EQ(res.items[i].poi_id, oracle[i].poi_id);
}

TEST(ScoreTest, PermutationAndIsolation) {
  World w = MakeWorld(testing::TinyConfig());
  auto req = RequestFrom(w.synth.dataset[3], 1);
  std::vector<catalog::PoiId> c;
  for (int i = 0; i < 11; ++i) c.push_back(w.synth.catalog.pois()[i * 3].poi_id);
  auto p = Score(req, c, *w.model);
  std::vector<catalog::PoiId> rev(c.rbegin(), c.rend());
  auto q = Score(req, rev, *w.model);
  for (int i = 0; i < 11; ++i) {
    EXPECT_NEAR(q[10 - i], p[i], 1e-5);
    EXPECT_GT(p[i], 0.0f);
    EXPECT_LT(p[i], 1.0f);
  }
  EXPECT_NEAR(Score(req, {c[4]}, *w.model)[0], p[4], 1e-5);
}

TEST(ExportTest, UnitNormAndByteIdentical) {
  World w = MakeWorld(testing::TinyConfig());
  const auto dir = std::filesystem::temp_directory_path() / "stgr_export_test";
  std::filesystem::create_directories(dir);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  EXPECT_EQ(ExportUserEmbeddings(w.synth.dataset, *w.model, dir / "u1.jsonl"),
            static_cast<int>(w.synth.dataset.size()));
  ExportUserEmbeddings(w.synth.dataset, *w.model, dir / "u2.jsonl");
  EXPECT_EQ(ExportPoiEmbeddings(*w.model, dir / "p1.jsonl"),
            static_cast<int>(w.synth.catalog.size()));
  ExportPoiEmbeddings(*w.model, dir / "p2.jsonl");
  EXPECT_EQ(slurp(dir / "u1.jsonl"), slurp(dir / "u2.jsonl"));
  EXPECT_EQ(slurp(dir / "p1.jsonl"), slurp(dir / "p2.jsonl"));
  for (const char* f : {"u1.jsonl", "p1.jsonl"}) {
    std::ifstream in(dir / f);
    std::string line;
    while (std::getline(in, line)) {
      auto j = json::parse(line);
      ASSERT_TRUE(j.contains("id"));
      double sq = 0.0;
      for (double v : j["vector"]) sq += v * v;
      EXPECT_NEAR(std::sqrt(sq), 1.0, 1e-5);
      EXPECT_EQ(j["vector"].size(), static_cast<std::size_t>(w.config.embed_dim));
    }
  }
  std::filesystem::remove_all(dir);
}

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    world_ = MakeWorld(testing::TinyConfig());
    service_.SetModels({world_.model, world_.model, world_.model});
    req_ = RequestFrom(world_.synth.dataset[0], 5);
  }
  World world_;
  Service service_;
  RecommendRequest req_;
};

TEST_F(ServiceTest, RecommendReturnsSortedResults) {
  auto r = service_.Handle("/recommend", RequestJson(req_).dump());
  ASSERT_EQ(r.status, 200) << r.body;
  auto j = json::parse(r.body);
  ASSERT_EQ(j["recommendations"].size(), 5u);
  for (std::size_t i = 1; i < 5; ++i) {
    EXPECT_GE(j["recommendations"][i - 1]["joint_prob"].get<double>(),
              j["recommendations"][i]["joint_prob"].get<double>());
  }
  EXPECT_EQ(service_.Handle("/recommend", RequestJson(req_).dump()).body, r.body);
}

TEST_F(ServiceTest, ScoreAndEmbed) {
  json j = RequestJson(req_);
  j["candidates"] = {world_.synth.catalog.pois()[0].poi_id, world_.synth.catalog.pois()[1].poi_id};
  auto r = service_.Handle("/score", j.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(json::parse(r.body)["scores"].size(), 2u);
  auto e = service_.Handle("/embed", RequestJson(req_).dump());
  ASSERT_EQ(e.status, 200) << e.body;
  EXPECT_EQ(json::parse(e.body)["vector"].size(), static_cast<std::size_t>(world_.config.embed_dim));
  auto p = service_.Handle("/embed", json{{"poi", world_.synth.catalog.pois()[2].poi_id}}.dump());
  ASSERT_EQ(p.status, 200) << p.body;
}

TEST_F(ServiceTest, ErrorsAreStructured) {
  EXPECT_EQ(service_.Handle("/recommend", "{not json").status, 400);
  EXPECT_EQ(service_.Handle("/recommend", "{}").status, 400);
  json bad_poi = RequestJson(req_);
  bad_poi["candidates"] = {-1};
  EXPECT_EQ(service_.Handle("/score", bad_poi.dump()).status, 400);
  json no_cands = RequestJson(req_);
  EXPECT_EQ(service_.Handle("/score", no_cands.dump()).status, 400);
  json bad_k = RequestJson(req_);
  bad_k["k"] = 0;
  auto r = service_.Handle("/recommend", bad_k.dump());
  EXPECT_EQ(r.status, 400);
  EXPECT_TRUE(json::parse(r.body)["error"].contains("message"));
  EXPECT_EQ(service_.Handle("/nope", "{}").status, 404);
  Service empty;
  EXPECT_EQ(empty.Handle("/recommend", RequestJson(req_).dump()).status, 503);
}

TEST_F(ServiceTest, ConcurrentBurstGivesIdenticalResponses) {
  const std::string body = RequestJson(req_).dump();
  const std::string expect = service_.Handle("/recommend", body).body;
  std::vector<std::string> got(100);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = t; i < 100; i += 4) got[i] = service_.Handle("/recommend", body).body;
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& g : got) EXPECT_EQ(g, expect);
}

TEST_F(ServiceTest, HotSwapReplacesTheWholeModelSet) {
  const std::string body = RequestJson(req_).dump();
  const std::string before = service_.Handle("/recommend", body).body;
  auto other = std::make_shared<SpacetimeGR<float>>(world_.ctx, world_.config, 99);
  service_.SetModels({other, other, other});
  const std::string after = service_.Handle("/recommend", body).body;
  EXPECT_NE(before, after);
  EXPECT_EQ(after, Service({other, nullptr, nullptr}).Handle("/recommend", body).body);
}

TEST_F(ServiceTest, LineProtocol) {
  std::istringstream in("/recommend " + RequestJson(req_).dump() + "\n/nope {}\nquit\n/embed {}\n");
  std::ostringstream out;
  EXPECT_EQ(service_.ServeLines(in, out), 2);
  std::istringstream lines(out.str());
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(json::parse(first)["recommendations"].size(), 5u);
  EXPECT_TRUE(json::parse(second).contains("error"));
}

TEST_F(ServiceTest, HttpEndpoints) {
  HttpServer http(service_);
  const int port = http.Bind("127.0.0.1", 0);
  std::thread runner([&] { http.Run(); });
  httplib::Client client("127.0.0.1", port);
  httplib::Result res;
  for (int attempt = 0; attempt < 50 && !res; ++attempt) {
    res = client.Post("/recommend", RequestJson(req_).dump(), "application/json");
    if (!res) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["recommendations"].size(), 5u);
  auto bad = client.Post("/score", "{}", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  http.Stop();
  runner.join();
}

TEST(LatencyTest, DeskModelMeetsBudget) {
  data::SynthConfig sc = data::SynthConfig::Default();
  sc.num_pois = 1000;
  sc.num_users = 2;
  sc.min_actions = 129;
  sc.max_actions = 129;
  auto synth = data::SynthGenerate(sc, 1);
  model::ModelConfig c = model::ModelConfig::Desk();
  auto ctx = model::ModelContext::Build(synth.catalog, c);
  SpacetimeGR<float> m(ctx, c, 1);
  auto req = RequestFrom(synth.dataset[0], 10);
  ASSERT_EQ(req.actions.size(), 128u);
  std::vector<catalog::PoiId> cands;
  for (int i = 0; i < 16; ++i) cands.push_back(synth.catalog.pois()[i * 7].poi_id);
  BeamDecode(req, m);  // warm up
  auto time_ms = [](auto&& fn) {
    double best = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      fn();
      best = std::min(best, std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0).count());
    }
    return best;
  };
  const double score_ms = time_ms([&] { Score(req, cands, m); });
  const double beam_ms = time_ms([&] { BeamDecode(req, m); });
  std::cout << "score(16) " << score_ms << " ms, beam(10,10) " << beam_ms << " ms\n";
  EXPECT_LT(score_ms, 100.0);
  EXPECT_LT(beam_ms, 100.0);
}

}  // namespace
}  // namespace stgr::infer
