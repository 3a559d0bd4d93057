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

#include "stgr/cli/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stgr/catalog/catalog.h"
#include "stgr/common/digest.h"
#include "stgr/common/error.h"
#include "stgr/data/checkin.h"
#include "stgr/data/cleanse.h"
#include "stgr/data/io.h"
#include "stgr/eval/ablation.h"
#include "stgr/eval/evaluate.h"
#include "stgr/eval/report.h"
#include "stgr/infer/export.h"
#include "stgr/infer/service.h"
#include "stgr/model/checkpoint.h"
#include "stgr/model/context.h"
#include "stgr/train/trainer.h"

namespace stgr::cli {
namespace fs = std::filesystem;

std::string ContentHash(const fs::path& path) {
  if (!fs::is_directory(path)) return GitBlobHashOfFile(path);
  std::vector<std::string> lines;
  for (const auto& entry : fs::recursive_directory_iterator(path)) {
    if (!entry.is_regular_file() || entry.path().filename() == "manifest.json") continue;
    lines.push_back(fs::relative(entry.path(), path).generic_string() + " " +
                    GitBlobHashOfFile(entry.path()));
  }
  std::sort(lines.begin(), lines.end());
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  return Sha1Hex(text);
}

std::string WriteManifest(const fs::path& path, const RunManifest& manifest,
                          const RunConfig& config) {
  nlohmann::ordered_json j;
  j["command"] = manifest.command;
  j["config_digest"] = ConfigDigest(config);
  j["seed"] = config.seed;
  j["options"] = manifest.options;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& p : manifest.inputs) inputs[p.generic_string()] = ContentHash(p);
  j["inputs"] = inputs;
  const std::string run_digest = Sha1Hex(j.dump());
  j["run_digest"] = run_digest;
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  for (const auto& p : manifest.outputs) outputs[p.generic_string()] = ContentHash(p);
  for (const auto& [name, digest] : manifest.output_digests) outputs[name] = digest;
  j["outputs"] = outputs;
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << "\n";
  if (!out) throw DataError("cannot write manifest " + path.string());
  return run_digest;
}

namespace {

// Manifest of a file output sits next to it; a directory holds its own.
fs::path ManifestPathFor(const fs::path& output) {
  if (fs::is_directory(output)) return output / "manifest.json";
  return fs::path(output.string() + ".manifest.json");
}

void RequireFlag(const fs::path& p, const std::string& flag) {
  if (p.empty()) throw UsageError(flag + " is required");
}

fs::path Pick(const fs::path& flag, const fs::path& configured, const std::string& name) {
  const fs::path p = flag.empty() ? configured : flag;
  RequireFlag(p, name);
  return p;
}

std::map<std::string, std::string> StageMeta(const std::string& stage, const RunConfig& config) {
  return {{"stage", stage}, {"config_digest", ConfigDigest(config)},
          {"seed", std::to_string(config.seed)}};
}

// Loads a checkpoint as a shared model.
std::shared_ptr<const model::SpacetimeGR<float>> LoadShared(const fs::path& dir) {
  return std::make_shared<const model::SpacetimeGR<float>>(model::LoadCheckpoint(dir).model);
}

struct Options {
  fs::path config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  fs::path in, out, catalog, dataset, samples, checkpoint, request;
  fs::path users_out, pois_out, eval_dataset, metrics, rank_checkpoint, embed_checkpoint;
  double r_min = -1.0;
  bool label_intent = false;
  bool curriculum = false;
  bool no_curriculum = false;
  int k = 10;
  std::vector<int> beam = {10, 10};
  std::string policy;
  std::string deltas = "all";
  std::string host = "127.0.0.1";
  int port = 8080;
  bool stdio = false;
  bool header = false;
  std::string delimiter = "\t";
};

RunConfig ResolveConfig(const Options& o) {
  RunConfig config = o.config_path.empty() ? RunConfig{} : LoadRunConfig(o.config_path);
  if (o.seed_set) config.seed = o.seed;
  if (!o.policy.empty()) config.eval.policy = o.policy;
  if (o.r_min >= 0) config.cleanse.r_min = o.r_min;
  if (o.curriculum) config.curriculum = true;
  if (o.no_curriculum) config.curriculum = false;
  config.Finalize();
  return config;
}

RunManifest BaseManifest(const std::string& command, const Options& o) {
  RunManifest m;
  m.command = command;
  if (!o.config_path.empty()) m.inputs.push_back(o.config_path);
  return m;
}

int CmdSynth(const Options& o, const RunConfig& config, std::ostream& out) {
  RequireFlag(o.out, "--out");
  const data::SynthResult r = data::SynthGenerate(config.synth, config.seed);
  fs::create_directories(o.out);
  catalog::WriteCatalog(r.catalog, o.out / "catalog.jsonl");
  data::WriteDataset(r.dataset, o.out / "dataset.jsonl");
  if (!r.sft.empty()) data::WriteSftSamples(r.sft, o.out / "sft.jsonl");
  RunManifest m = BaseManifest("synth", o);
  m.outputs = {o.out};
  WriteManifest(ManifestPathFor(o.out), m, config);
  out << "synth: " << r.catalog.size() << " POIs, " << r.dataset.size() << " sequences, "
      << r.sft.size() << " ranking samples -> " << o.out.string() << "\n";
  return kExitOk;
}

int CmdIngest(const Options& o, const RunConfig& config, std::ostream& out) {
  RequireFlag(o.in, "--in");
  RequireFlag(o.out, "--out");
  if (o.delimiter.size() != 1) throw UsageError("--delimiter must be one character");
  data::CheckinSchema schema;
  schema.delimiter = o.delimiter[0];
  schema.header = o.header;
  const data::CheckinResult r = data::IngestCheckins(o.in.string(), schema);
  fs::create_directories(o.out);
  catalog::WriteCatalog(r.catalog, o.out / "catalog.jsonl");
  data::WriteDataset(r.dataset, o.out / "dataset.jsonl");
  RunManifest m = BaseManifest("ingest", o);
  m.inputs.push_back(o.in);
  m.outputs = {o.out};
  WriteManifest(ManifestPathFor(o.out), m, config);
  out << "ingest: " << r.rows << " rows, " << r.warnings << " skipped, " << r.catalog.size()
      << " POIs, " << r.dataset.size() << " sequences\n";
  return kExitOk;
}

int CmdCleanse(const Options& o, const RunConfig& config, std::ostream& out) {
  RequireFlag(o.in, "--in");
  RequireFlag(o.out, "--out");
  data::Dataset dataset = data::ReadDataset(o.in);
  if (o.label_intent) {
    data::IntentRules rules;
    rules.functional_categories.insert(config.cleanse.functional.begin(),
                                       config.cleanse.functional.end());
    rules.search_ratio_threshold = config.cleanse.search_ratio_threshold;
    rules.poi_stats = data::CountPoiStats(dataset);
    data::LabelDataset(dataset, rules);
  }
  data::CleanseConfig cc;
  cc.r_min = config.cleanse.r_min;
  cc.hard_drop_functional = config.cleanse.hard_drop_functional;
  data::CleanseStats stats;
  const data::Dataset cleaned = data::Cleanse(dataset, cc, &stats);
  data::WriteDataset(cleaned, o.out);
  RunManifest m = BaseManifest("cleanse", o);
  m.options = {{"label_intent", o.label_intent ? "true" : "false"}};
  m.inputs.push_back(o.in);
  m.outputs = {o.out};
  WriteManifest(ManifestPathFor(o.out), m, config);
  out << stats.ToTable();
  if (stats.empty_result) out << "warning: every sequence was removed\n";
  return kExitOk;
}

int CmdIndex(const Options& o, const RunConfig& config, std::ostream& out) {
  const fs::path catalog_path = Pick(o.catalog, config.paths.catalog, "--catalog");
  RequireFlag(o.out, "--out");
  auto context = model::ModelContext::Build(catalog::ReadCatalog(catalog_path), config.model);
  {
    std::ofstream f(o.out, std::ios::binary);
    context->index().Serialize(f);
    if (!f) throw DataError("cannot write " + o.out.string());
  }
  RunManifest m = BaseManifest("index", o);
  m.inputs.push_back(catalog_path);
  m.outputs = {o.out};
  WriteManifest(ManifestPathFor(o.out), m, config);
  out << "index: " << context->index().num_pois() << " POIs in "
      << context->index().num_blocks() << " blocks (max " << context->index().max_block_size()
      << " per block), vocabulary " << context->vocab().size() << ", digest "
      << context->index().Digest() << "\n";
  return kExitOk;
}

void PrintStage(const std::string& name, const train::StageResult& r, std::ostream& out) {
  out << name << ": " << r.steps << " steps over " << r.epochs << " epochs";
  if (!r.losses.empty()) out << ", final loss " << r.losses.back();
  if (r.skipped) out << ", " << r.skipped << " skipped";
  out << "\n";
}

int CmdPretrain(const Options& o, const RunConfig& config, std::ostream& out) {
  const fs::path catalog_path = Pick(o.catalog, config.paths.catalog, "--catalog");
  const fs::path dataset_path = Pick(o.dataset, config.paths.dataset, "--dataset");
  const fs::path out_dir = Pick(o.out, config.paths.checkpoint_dir, "--out");
  const data::Dataset dataset = data::ReadDataset(dataset_path);
  auto context = model::ModelContext::Build(catalog::ReadCatalog(catalog_path), config.model);
  model::SpacetimeGR<float> model(context, config.model, config.seed);
  train::RunOptions options;
  options.metrics_path = o.metrics;
  const auto results =
      train::RunPretrain(config.pretrain, dataset, config.curriculum, config.travel_km, model,
                         options);
  for (std::size_t i = 0; i < results.size(); ++i) {
    PrintStage(i == 0 ? "pretrain_single" : "pretrain_multi", results[i], out);
  }
  model::SaveCheckpoint(model, out_dir, StageMeta("pretrain", config));
  RunManifest m = BaseManifest("pretrain", o);
  m.options = {{"curriculum", config.curriculum ? "true" : "false"}};
  m.inputs.push_back(catalog_path);
  m.inputs.push_back(dataset_path);
  m.outputs = {out_dir};
  WriteManifest(ManifestPathFor(out_dir), m, config);
  out << "checkpoint: " << out_dir.string() << " (" << results.back().digest << ")\n";
  return kExitOk;
}

int CmdFinetune(const std::string& command, train::StageConfig stage, const Options& o,
                const RunConfig& config, std::ostream& out) {
  RequireFlag(o.checkpoint, "--checkpoint");
  const fs::path out_dir = Pick(o.out, config.paths.checkpoint_dir, "--out");
  model::SpacetimeGR<float> model = model::LoadCheckpoint(o.checkpoint).model;
  RunManifest m = BaseManifest(command, o);
  m.inputs.push_back(o.checkpoint);
  std::vector<data::SftSample> samples;
  if (!o.samples.empty() || !config.paths.samples.empty()) {
    const fs::path samples_path = o.samples.empty() ? config.paths.samples : o.samples;
    samples = data::ReadSftSamples(samples_path);
    m.inputs.push_back(samples_path);
  } else if (stage.stage == train::Stage::kDpo) {
    const fs::path dataset_path = Pick(o.dataset, config.paths.dataset, "--samples or --dataset");
    const train::PreferenceSet prefs = train::PairsFromRule(
        data::ReadDataset(dataset_path), model.context().catalog(), config.preference,
        config.seed);
    samples = prefs.samples;
    m.inputs.push_back(dataset_path);
    out << "align: " << prefs.pairs.size() << " rule-based preference pairs\n";
  } else {
    throw UsageError("--samples is required");
  }
  train::RunOptions options;
  options.metrics_path = o.metrics;
  const train::StageResult r = train::RunStage(stage, {nullptr, &samples}, model, options);
  PrintStage(command, r, out);
  model::SaveCheckpoint(model, out_dir, StageMeta(command, config));
  m.outputs = {out_dir};
  WriteManifest(ManifestPathFor(out_dir), m, config);
  out << "checkpoint: " << out_dir.string() << " (" << r.digest << ")\n";
  return kExitOk;
}

eval::EvalOptions EvalOptionsOf(const RunConfig& config) {
  eval::EvalOptions e;
  e.w_block = config.eval.w_block;
  e.w_inner = config.eval.w_inner;
  e.discovery_k = config.eval.discovery_k;
  e.discovery_m = config.eval.discovery_m;
  return e;
}

eval::PositionPolicy PolicyOf(const RunConfig& config) {
  return config.eval.policy == "every" ? eval::PositionPolicy::kEveryAction
                                       : eval::PositionPolicy::kLastAction;
}

int CmdEval(const Options& o, const RunConfig& config, std::ostream& out) {
  RequireFlag(o.checkpoint, "--checkpoint");
  const fs::path dataset_path = Pick(o.dataset, config.paths.dataset, "--dataset");
  const fs::path out_dir = Pick(o.out, config.paths.report_dir, "--out");
  const model::LoadedCheckpoint loaded = model::LoadCheckpoint(o.checkpoint);
  const model::SpacetimeGR<float>& model = loaded.model;
  const auto positions = eval::MakePositions(data::ReadDataset(dataset_path), PolicyOf(config));
  eval::EvalReport report;
  report.rows.push_back(eval::Evaluate(model, positions, EvalOptionsOf(config)));
  // Named after the training stage so the report does not depend on paths.
  const auto stage = loaded.meta.find("stage");
  report.rows[0].name = stage == loaded.meta.end() ? "model" : stage->second;
  RunManifest m = BaseManifest("eval", o);
  m.inputs.push_back(o.checkpoint);
  m.inputs.push_back(dataset_path);
  if (!o.samples.empty()) {
    report.rows[0].auc = eval::RankingAuc(model, data::ReadSftSamples(o.samples));
    m.inputs.push_back(o.samples);
  }
  eval::WriteReport(report, out_dir);
  m.output_digests = {{"report", eval::ReportDigest(report)}};
  WriteManifest(ManifestPathFor(out_dir), m, config);
  out << eval::FormatTable(report) << "report digest: " << eval::ReportDigest(report) << "\n";
  return kExitOk;
}

int CmdAblate(const Options& o, const RunConfig& config, std::ostream& out) {
  const fs::path catalog_path = Pick(o.catalog, config.paths.catalog, "--catalog");
  const fs::path dataset_path = Pick(o.dataset, config.paths.dataset, "--dataset");
  const fs::path out_dir = Pick(o.out, config.paths.report_dir, "--out");
  eval::AblationSetup setup;
  setup.catalog = catalog::ReadCatalog(catalog_path);
  setup.train = data::ReadDataset(dataset_path);
  const data::Dataset held_out =
      o.eval_dataset.empty() ? setup.train : data::ReadDataset(o.eval_dataset);
  setup.positions = eval::MakePositions(held_out, PolicyOf(config));
  if (!o.samples.empty()) {
    setup.sft_train = data::ReadSftSamples(o.samples);
    setup.sft_test = setup.sft_train;
  }
  setup.base_config = config.model;
  setup.curriculum = config.curriculum;
  setup.travel_km = config.travel_km;
  setup.pretrain = config.pretrain;
  setup.sft_gen = config.sft_gen;
  setup.eval = EvalOptionsOf(config);
  setup.seed = config.seed;

  std::vector<eval::AblationDelta> deltas;
  const auto standard = eval::StandardDeltas();
  if (o.deltas == "all") {
    deltas = standard;
  } else if (o.deltas != "none") {
    std::stringstream in(o.deltas);
    std::string name;
    while (std::getline(in, name, ',')) {
      const auto it = std::find_if(standard.begin(), standard.end(),
                                   [&](const eval::AblationDelta& d) { return d.name == name; });
      if (it == standard.end()) throw UsageError("unknown delta '" + name + "'");
      deltas.push_back(*it);
    }
  }
  const eval::EvalReport report = eval::RunAblation(setup, deltas);
  eval::WriteReport(report, out_dir);
  RunManifest m = BaseManifest("ablate", o);
  m.options = {{"deltas", o.deltas}};
  m.inputs.push_back(catalog_path);
  m.inputs.push_back(dataset_path);
  if (!o.eval_dataset.empty()) m.inputs.push_back(o.eval_dataset);
  if (!o.samples.empty()) m.inputs.push_back(o.samples);
  m.output_digests = {{"report", eval::ReportDigest(report)}};
  WriteManifest(ManifestPathFor(out_dir), m, config);
  out << eval::FormatTable(report) << "report digest: " << eval::ReportDigest(report) << "\n";
  return kExitOk;
}

int ExitForStatus(int status) {
  if (status == 200) return kExitOk;
  if (status == 500) return kExitNumeric;
  return kExitData;
}

std::string ReadText(const fs::path& path) {
  if (path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int CmdDecode(const Options& o, const RunConfig& config, std::ostream& out, std::ostream& err) {
  RequireFlag(o.checkpoint, "--checkpoint");
  RequireFlag(o.request, "--request");
  if (o.beam.size() != 2) throw UsageError("--beam takes two widths");
  nlohmann::json body;
  try {
    body = nlohmann::json::parse(ReadText(o.request));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("request is not JSON: " + std::string(e.what()));
  }
  body["k"] = o.k;
  body["beam"] = o.beam;
  infer::ModelSet models;
  models.recommend = LoadShared(o.checkpoint);
  const infer::Service service(models);
  const infer::Response r = service.Handle("/recommend", body.dump());
  if (r.status != 200) {
    err << r.body << "\n";
    return ExitForStatus(r.status);
  }
  out << r.body << "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    f << r.body << "\n";
    if (!f) throw DataError("cannot write " + o.out.string());
    RunManifest m = BaseManifest("decode", o);
    m.options = {{"k", std::to_string(o.k)},
                 {"beam", std::to_string(o.beam[0]) + "," + std::to_string(o.beam[1])}};
    m.inputs.push_back(o.checkpoint);
    if (o.request != "-") m.inputs.push_back(o.request);
    m.outputs = {o.out};
    WriteManifest(ManifestPathFor(o.out), m, config);
  }
  return kExitOk;
}

int CmdExport(const Options& o, const RunConfig& config, std::ostream& out) {
  RequireFlag(o.checkpoint, "--checkpoint");
  if (o.users_out.empty() && o.pois_out.empty()) {
    throw UsageError("--users or --pois is required");
  }
  const model::SpacetimeGR<float> model = model::LoadCheckpoint(o.checkpoint).model;
  RunManifest m = BaseManifest("export-emb", o);
  m.inputs.push_back(o.checkpoint);
  if (!o.users_out.empty()) {
    const fs::path dataset_path = Pick(o.dataset, config.paths.dataset, "--dataset");
    const int n = infer::ExportUserEmbeddings(data::ReadDataset(dataset_path), model, o.users_out);
    m.inputs.push_back(dataset_path);
    m.outputs.push_back(o.users_out);
    out << "export-emb: " << n << " user vectors -> " << o.users_out.string() << "\n";
  }
  if (!o.pois_out.empty()) {
    const int n = infer::ExportPoiEmbeddings(model, o.pois_out);
    m.outputs.push_back(o.pois_out);
    out << "export-emb: " << n << " POI vectors -> " << o.pois_out.string() << "\n";
  }
  WriteManifest(ManifestPathFor(m.outputs.front()), m, config);
  return kExitOk;
}

int CmdServe(const Options& o, std::ostream& out) {
  infer::ModelSet models;
  if (!o.checkpoint.empty()) models.recommend = LoadShared(o.checkpoint);
  if (!o.rank_checkpoint.empty()) models.score = LoadShared(o.rank_checkpoint);
  if (!o.embed_checkpoint.empty()) models.embed = LoadShared(o.embed_checkpoint);
  if (!models.recommend && !models.score && !models.embed) {
    throw UsageError("serve needs at least one checkpoint");
  }
  const infer::Service service(models);
  if (o.stdio) {
    service.ServeLines(std::cin, out);
    return kExitOk;
  }
  infer::HttpServer server(service);
  const int port = server.Bind(o.host, o.port);
  out << "serving on " << o.host << ":" << port << std::endl;
  server.Run();
  return kExitOk;
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spacetime-GR: spatiotemporal generative POI recommendation"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "key=value run config");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { o.seed = s, o.seed_set = true; },
        "override the run seed");
  };
  auto* synth = app.add_subcommand("synth", "generate a synthetic catalog and dataset");
  add_common(synth);
  synth->add_option("--out", o.out, "output directory");

  auto* ingest = app.add_subcommand("ingest", "convert a check-in table");
  add_common(ingest);
  ingest->add_option("--in", o.in, "check-in file");
  ingest->add_option("--out", o.out, "output directory");
  ingest->add_option("--delimiter", o.delimiter, "field delimiter");
  ingest->add_flag("--header", o.header, "skip the first line");

  auto* cleanse = app.add_subcommand("cleanse", "filter noisy and low-richness sequences");
  add_common(cleanse);
  cleanse->add_option("--in", o.in, "input dataset");
  cleanse->add_option("--out", o.out, "output dataset");
  cleanse->add_option("--r-min", o.r_min, "minimum richness");
  cleanse->add_flag("--label-intent", o.label_intent, "relabel It from category and search ratio");

  auto* index = app.add_subcommand("index", "build the hierarchical POI index");
  add_common(index);
  index->add_option("--catalog", o.catalog, "catalog file");
  index->add_option("--out", o.out, "index file");

  auto* pretrain = app.add_subcommand("pretrain", "next-POI pretraining");
  add_common(pretrain);
  pretrain->add_option("--catalog", o.catalog, "catalog file");
  pretrain->add_option("--dataset", o.dataset, "sequence dataset");
  pretrain->add_option("--out", o.out, "checkpoint directory");
  pretrain->add_option("--metrics", o.metrics, "metrics JSONL");
  pretrain->add_flag("--curriculum", o.curriculum, "single-pattern then multi-pattern phase");
  pretrain->add_flag("--no-curriculum", o.no_curriculum, "one pass over the full data");

  std::vector<CLI::App*> finetunes;
  for (const auto& [name, help] :
       std::vector<std::pair<std::string, std::string>>{
           {"sft-emb", "dual-tower InfoNCE fine-tuning"},
           {"sft-gen", "generative ranking fine-tuning"},
           {"align", "DPO alignment"}}) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    sub->add_option("--checkpoint", o.checkpoint, "input checkpoint");
    sub->add_option("--samples", o.samples, "ranking samples");
    sub->add_option("--out", o.out, "output checkpoint directory");
    sub->add_option("--metrics", o.metrics, "metrics JSONL");
    if (name == "align") sub->add_option("--dataset", o.dataset, "sequences for rule pairs");
    finetunes.push_back(sub);
  }

  auto* evalc = app.add_subcommand("eval", "hit rate, AUC and discovery on a dataset");
  add_common(evalc);
  evalc->add_option("--checkpoint", o.checkpoint, "checkpoint");
  evalc->add_option("--dataset", o.dataset, "evaluation sequences");
  evalc->add_option("--samples", o.samples, "ranking samples for AUC");
  evalc->add_option("--policy", o.policy, "last | every");
  evalc->add_option("--out", o.out, "report directory");

  auto* ablate = app.add_subcommand("ablate", "train and compare ablation variants");
  add_common(ablate);
  ablate->add_option("--catalog", o.catalog, "catalog file");
  ablate->add_option("--dataset", o.dataset, "training sequences");
  ablate->add_option("--eval-dataset", o.eval_dataset, "held-out sequences");
  ablate->add_option("--samples", o.samples, "ranking samples");
  ablate->add_option("--policy", o.policy, "last | every");
  ablate->add_option("--deltas", o.deltas, "all, none or a comma list of variant names");
  ablate->add_option("--out", o.out, "report directory");

  auto* decode = app.add_subcommand("decode", "beam-decode recommendations for one request");
  add_common(decode);
  decode->add_option("--checkpoint", o.checkpoint, "checkpoint");
  decode->add_option("--request", o.request, "request JSON file, - for stdin");
  decode->add_option("--k", o.k, "recommendations");
  decode->add_option("--beam", o.beam, "block and inner beam widths")->expected(2);
  decode->add_option("--out", o.out, "response file");

  auto* exporter = app.add_subcommand("export-emb", "export normalized tower embeddings");
  add_common(exporter);
  exporter->add_option("--checkpoint", o.checkpoint, "checkpoint");
  exporter->add_option("--dataset", o.dataset, "sequences for user vectors");
  exporter->add_option("--users", o.users_out, "user vectors JSONL");
  exporter->add_option("--pois", o.pois_out, "POI vectors JSONL");

  auto* serve = app.add_subcommand("serve", "serve /recommend, /score and /embed");
  serve->add_option("--checkpoint", o.checkpoint, "generative checkpoint");
  serve->add_option("--rank-checkpoint", o.rank_checkpoint, "ranking checkpoint");
  serve->add_option("--embed-checkpoint", o.embed_checkpoint, "embedding checkpoint");
  serve->add_option("--host", o.host, "bind address");
  serve->add_option("--port", o.port, "port, 0 for any");
  serve->add_flag("--stdio", o.stdio, "line protocol on stdin/stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (serve->parsed()) return CmdServe(o, out);
    const RunConfig config = ResolveConfig(o);
    if (synth->parsed()) return CmdSynth(o, config, out);
    if (ingest->parsed()) return CmdIngest(o, config, out);
    if (cleanse->parsed()) return CmdCleanse(o, config, out);
    if (index->parsed()) return CmdIndex(o, config, out);
    if (pretrain->parsed()) return CmdPretrain(o, config, out);
    if (finetunes[0]->parsed()) return CmdFinetune("sft-emb", config.sft_emb, o, config, out);
    if (finetunes[1]->parsed()) return CmdFinetune("sft-gen", config.sft_gen, o, config, out);
    if (finetunes[2]->parsed()) return CmdFinetune("align", config.align, o, config, out);
    if (evalc->parsed()) return CmdEval(o, config, out);
    if (ablate->parsed()) return CmdAblate(o, config, out);
    if (decode->parsed()) return CmdDecode(o, config, out, err);
    if (exporter->parsed()) return CmdExport(o, config, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace stgr::cli
