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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "stgr/cli/cli.h"
#include "stgr/cli/run_config.h"
#include "stgr/common/error.h"
#include "stgr/data/io.h"

namespace stgr::cli {
namespace {
namespace fs = std::filesystem;

TEST(RunConfigTest, EmptyFileGivesDeskDefaults) {
  const RunConfig c = ParseRunConfig("");
  EXPECT_EQ(ToText(c), ToText(RunConfig{}));
  EXPECT_EQ(c.model.ToKeyValues(), model::ModelConfig::Desk().ToKeyValues());
  EXPECT_DOUBLE_EQ(c.sft_emb.tau, 0.1);
  EXPECT_DOUBLE_EQ(c.align.beta, 1.0);
  EXPECT_DOUBLE_EQ(c.cleanse.r_min, 0.3);
  EXPECT_DOUBLE_EQ(c.pretrain.schedule.lr0, 1e-3);
  EXPECT_TRUE(c.curriculum);
}

TEST(RunConfigTest, TauAndBetaRoundTrip) {
  const RunConfig c = ParseRunConfig("tau=0.1\nbeta=1\n");
  EXPECT_EQ(c.sft_emb.tau, 0.1);
  EXPECT_EQ(c.align.beta, 1.0);
  const std::string text = ToText(c);
  EXPECT_NE(text.find("tau = 0.1\n"), std::string::npos);
  EXPECT_NE(text.find("beta = 1\n"), std::string::npos);
  const RunConfig again = ParseRunConfig(text);
  EXPECT_EQ(again.sft_emb.tau, 0.1);
  EXPECT_EQ(again.align.beta, 1.0);
}

TEST(RunConfigTest, CanonicalTextRoundTrips) {
  RunConfig c = ParseRunConfig(
      "# comment\nseed = 42\n[model]\nlayers = 3\nmax_len = 64\n[pretrain]\nlr = 0.0025\n"
      "[cleanse]\nfunctional = office, medical,  school\n[eval]\ndiscovery_m = 1,2\n"
      "policy = every\n[paths]\ndataset = a b.jsonl\n");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.model.decoder.layers, 3);
  EXPECT_EQ(c.model.max_len, 64);
  EXPECT_EQ(c.pretrain.schedule.lr0, 0.0025);
  EXPECT_EQ(c.cleanse.functional, (std::vector<std::string>{"office", "medical", "school"}));
  EXPECT_EQ(c.eval.discovery_m, (std::vector<int>{1, 2}));
  EXPECT_EQ(c.paths.dataset, fs::path("a b.jsonl"));
  EXPECT_EQ(ToText(ParseRunConfig(ToText(c))), ToText(c));
  EXPECT_NE(ConfigDigest(c), ConfigDigest(RunConfig{}));
}

TEST(RunConfigTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(ParseRunConfig("nonsense = 1"), UsageError);
  EXPECT_THROW(ParseRunConfig("[model]\nwidth = 3"), UsageError);
  EXPECT_THROW(ParseRunConfig("[nowhere]\n"), UsageError);
  EXPECT_THROW(ParseRunConfig("[pretrain]\nlr = fast"), UsageError);
  EXPECT_THROW(ParseRunConfig("seed"), UsageError);
  EXPECT_THROW(ParseRunConfig("[run\n"), UsageError);
  RunConfig c = ParseRunConfig("[model]\ndim = 48");
  EXPECT_THROW(c.Finalize(), UsageError);
  c = ParseRunConfig("[eval]\npolicy = sometimes");
  EXPECT_THROW(c.Finalize(), UsageError);
}

TEST(RunConfigTest, FinalizeSeedsEveryStage) {
  RunConfig c = ParseRunConfig("seed = 9");
  c.Finalize();
  EXPECT_EQ(c.pretrain.seed, 9u);
  EXPECT_EQ(c.align.seed, 9u);
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("stgr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    WriteFile("small.cfg",
              "seed = 3\n[synth]\nnum_users = 24\nnum_pois = 50\nmin_actions = 8\n"
              "max_actions = 12\nsft_per_user = 1\nsft_negatives = 4\n"
              "[model]\nlayers = 1\ndim = 16\nheads = 2\nffn_dim = 32\ntime_sub_dim = 4\n"
              "geo_levels = 4\ngeo_dim = 4\ngeo_table_size = 64\nembed_dim = 8\n"
              "[pretrain]\nmax_steps = 4\nbatch_size = 8\n[sft_gen]\nmax_steps = 2\n"
              "[align]\nmax_steps = 2\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void WriteFile(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }
  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  CliRun Exec(std::vector<std::string> args) {
    args.insert(args.begin(), "stgr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = Main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

TEST_F(CliTest, CleansePrintsStatsTable) {
  ASSERT_EQ(Exec({"synth", "--config", P("small.cfg"), "--out", P("data")}).code, 0);
  const CliRun r = Exec({"cleanse", "--in", P("data/dataset.jsonl"), "--out", P("c.jsonl"),
                      "--r-min", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Sequence Num"), std::string::npos);
  EXPECT_NE(r.out.find("coarse data"), std::string::npos);
  EXPECT_NE(r.out.find("+ sequence level"), std::string::npos);
  EXPECT_TRUE(fs::exists(P("c.jsonl")));
  EXPECT_TRUE(fs::exists(P("c.jsonl.manifest.json")));
  EXPECT_TRUE(fs::exists(P("data/manifest.json")));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Exec({}).code, 2);
  EXPECT_EQ(Exec({"frobnicate"}).code, 2);
  EXPECT_EQ(Exec({"cleanse", "--bogus"}).code, 2);
  EXPECT_EQ(Exec({"cleanse", "--out", P("x.jsonl")}).code, 2);
  EXPECT_EQ(Exec({"cleanse", "--in", P("missing.jsonl"), "--out", P("x.jsonl")}).code, 3);
  EXPECT_EQ(Exec({"synth", "--config", P("missing.cfg"), "--out", P("d")}).code, 3);
  WriteFile("bad.cfg", "[model]\nunknown_key = 1\n");
  const CliRun r = Exec({"synth", "--config", P("bad.cfg"), "--out", P("d")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown_key"), std::string::npos);
  EXPECT_EQ(Exec({"--help"}).code, 0);
}

TEST_F(CliTest, PipelineRunsAndCurriculumOrdersPhases) {
  ASSERT_EQ(Exec({"synth", "--config", P("small.cfg"), "--out", P("data")}).code, 0);
  const CliRun pre = Exec({"pretrain", "--config", P("small.cfg"), "--catalog",
                        P("data/catalog.jsonl"), "--dataset", P("data/dataset.jsonl"), "--out",
                        P("ck"), "--curriculum"});
  ASSERT_EQ(pre.code, 0) << pre.err;
  const auto single = pre.out.find("pretrain_single");
  const auto multi = pre.out.find("pretrain_multi");
  ASSERT_NE(single, std::string::npos);
  ASSERT_NE(multi, std::string::npos);
  EXPECT_LT(single, multi);
  EXPECT_TRUE(fs::exists(P("ck/manifest.json")));

  const CliRun flat = Exec({"pretrain", "--config", P("small.cfg"), "--catalog",
                         P("data/catalog.jsonl"), "--dataset", P("data/dataset.jsonl"), "--out",
                         P("ck_flat"), "--no-curriculum"});
  ASSERT_EQ(flat.code, 0) << flat.err;
  EXPECT_EQ(flat.out.find("pretrain_multi"), std::string::npos);

  ASSERT_EQ(Exec({"sft-gen", "--config", P("small.cfg"), "--checkpoint", P("ck"), "--samples",
                  P("data/sft.jsonl"), "--out", P("ck_gen")})
                .code,
            0);
  ASSERT_EQ(Exec({"align", "--config", P("small.cfg"), "--checkpoint", P("ck"), "--dataset",
                  P("data/dataset.jsonl"), "--out", P("ck_dpo")})
                .code,
            0);
  const CliRun ev = Exec({"eval", "--config", P("small.cfg"), "--checkpoint", P("ck_gen"),
                       "--dataset", P("data/dataset.jsonl"), "--samples", P("data/sft.jsonl"),
                       "--out", P("rep")});
  ASSERT_EQ(ev.code, 0) << ev.err;
  EXPECT_TRUE(fs::exists(P("rep/report.jsonl")));
  EXPECT_TRUE(fs::exists(P("rep/discovery.csv")));

  // A request built from the first sequence.
  const data::Dataset ds = data::ReadDataset(P("data/dataset.jsonl"));
  const auto& actions = ds[0].actions;
  nlohmann::json req;
  req["profile"] = data::ProfileToJson(ds[0].profile);
  req["actions"] = data::ActionsToJson({actions.begin(), actions.end() - 1});
  req["t_req"] = actions.back().t;
  req["g_req"] = data::PointToJson(actions.back().g_u);
  WriteFile("req.json", req.dump());
  const CliRun dec = Exec({"decode", "--checkpoint", P("ck"), "--request", P("req.json"), "--k", "5",
                        "--beam", "10", "10"});
  ASSERT_EQ(dec.code, 0) << dec.err;
  const auto recs = nlohmann::json::parse(dec.out).at("recommendations");
  ASSERT_EQ(recs.size(), 5u);
  for (std::size_t i = 1; i < recs.size(); ++i) {
    EXPECT_GE(recs[i - 1]["joint_prob"].get<double>(), recs[i]["joint_prob"].get<double>());
  }

  const CliRun exp = Exec({"export-emb", "--checkpoint", P("ck"), "--dataset",
                        P("data/dataset.jsonl"), "--pois", P("pois.jsonl")});
  ASSERT_EQ(exp.code, 0) << exp.err;
  EXPECT_TRUE(fs::exists(P("pois.jsonl.manifest.json")));
}

TEST_F(CliTest, IdenticalRunsGiveIdenticalDigests) {
  auto pipeline = [&](const std::string& tag) {
    EXPECT_EQ(Exec({"synth", "--config", P("small.cfg"), "--out", P("data" + tag)}).code, 0);
    EXPECT_EQ(Exec({"pretrain", "--config", P("small.cfg"), "--catalog",
                    P("data" + tag + "/catalog.jsonl"), "--dataset",
                    P("data" + tag + "/dataset.jsonl"), "--out", P("ck" + tag)})
                  .code,
              0);
    EXPECT_EQ(Exec({"eval", "--config", P("small.cfg"), "--checkpoint", P("ck" + tag),
                    "--dataset", P("data" + tag + "/dataset.jsonl"), "--out", P("rep" + tag)})
                  .code,
              0);
    std::ifstream in(P("rep" + tag + "/manifest.json"));
    return nlohmann::json::parse(in);
  };
  const auto a = pipeline("a");
  const auto b = pipeline("b");
  EXPECT_EQ(ContentHash(P("dataa")), ContentHash(P("datab")));
  EXPECT_EQ(ContentHash(P("cka")), ContentHash(P("ckb")));
  EXPECT_EQ(a["outputs"]["report"], b["outputs"]["report"]);
  EXPECT_EQ(a["config_digest"], b["config_digest"]);
}

TEST_F(CliTest, NumericFailureLeavesNoCheckpoint) {
  ASSERT_EQ(Exec({"synth", "--config", P("small.cfg"), "--out", P("data")}).code, 0);
  WriteFile("explode.cfg",
            "[model]\nlayers = 1\ndim = 16\nheads = 2\nffn_dim = 32\ntime_sub_dim = 4\n"
            "geo_levels = 4\ngeo_dim = 4\ngeo_table_size = 64\nembed_dim = 8\n"
            "[pretrain]\nmax_steps = 6\nbatch_size = 8\nlr = 1e300\nmin_lr = 1e300\n"
            "warmup = 0\nclip_norm = 0\n");
  const CliRun r = Exec({"pretrain", "--config", P("explode.cfg"), "--catalog",
                      P("data/catalog.jsonl"), "--dataset", P("data/dataset.jsonl"), "--out",
                      P("ck"), "--no-curriculum"});
  EXPECT_EQ(r.code, 4) << r.out << r.err;
  EXPECT_FALSE(fs::exists(P("ck")));
}

}  // namespace
}  // namespace stgr::cli
