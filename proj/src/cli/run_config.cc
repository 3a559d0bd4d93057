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

#include "stgr/cli/run_config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>
#include <utility>

#include "stgr/common/digest.h"
#include "stgr/common/error.h"

namespace stgr::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename V>
std::string Format(const V& v) {
  if constexpr (std::is_same_v<V, bool>) {
    return v ? "true" : "false";
  } else if constexpr (std::is_same_v<V, std::string>) {
    return v;
  } else if constexpr (std::is_same_v<V, std::filesystem::path>) {
    return v.string();
  } else if constexpr (std::is_same_v<V, std::vector<std::string>> ||
                       std::is_same_v<V, std::vector<int>>) {
    std::string out;
    for (const auto& x : v) {
      if (!out.empty()) out += ",";
      out += Format(x);
    }
    return out;
  } else {
    // Shortest form that parses back to the same value.
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
  }
}

template <typename V>
V ParseValue(const std::string& key, const std::string& s) {
  if constexpr (std::is_same_v<V, bool>) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw UsageError("bad boolean for " + key + ": '" + s + "'");
  } else if constexpr (std::is_same_v<V, std::string> ||
                       std::is_same_v<V, std::filesystem::path>) {
    return V(s);
  } else if constexpr (std::is_same_v<V, std::vector<std::string>>) {
    return SplitList(s);
  } else if constexpr (std::is_same_v<V, std::vector<int>>) {
    std::vector<int> out;
    for (const auto& item : SplitList(s)) out.push_back(ParseValue<int>(key, item));
    return out;
  } else {
    V v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
      throw UsageError("bad number for " + key + ": '" + s + "'");
    }
    return v;
  }
}

struct Field {
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
};

template <typename Ref>
Field Bind(Ref ref) {
  using V = std::remove_reference_t<decltype(ref(std::declval<RunConfig&>()))>;
  return {[ref](const RunConfig& c) { return Format<V>(ref(const_cast<RunConfig&>(c))); },
          [ref](RunConfig& c, const std::string& key, const std::string& v) {
            ref(c) = ParseValue<V>(key, v);
          }};
}

using Section = std::vector<std::pair<std::string, Field>>;

template <typename StageRef>
Section StageFields(StageRef stage) {
  return {
      {"epochs", Bind([stage](RunConfig& c) -> int& { return stage(c).epochs; })},
      {"batch_size", Bind([stage](RunConfig& c) -> int& { return stage(c).batch_size; })},
      {"max_steps", Bind([stage](RunConfig& c) -> int& { return stage(c).max_steps; })},
      {"lr", Bind([stage](RunConfig& c) -> double& { return stage(c).schedule.lr0; })},
      {"min_lr", Bind([stage](RunConfig& c) -> double& { return stage(c).schedule.min_lr; })},
      {"warmup", Bind([stage](RunConfig& c) -> int& { return stage(c).schedule.warmup; })},
      {"horizon", Bind([stage](RunConfig& c) -> int& { return stage(c).schedule.horizon; })},
      {"clip_norm", Bind([stage](RunConfig& c) -> double& { return stage(c).adam.clip_norm; })},
      {"beta1", Bind([stage](RunConfig& c) -> double& { return stage(c).adam.beta1; })},
      {"beta2", Bind([stage](RunConfig& c) -> double& { return stage(c).adam.beta2; })},
      {"eps", Bind([stage](RunConfig& c) -> double& { return stage(c).adam.eps; })},
  };
}

const std::vector<std::pair<std::string, Section>>& Schema() {
  static const auto* schema = new std::vector<std::pair<std::string, Section>>{
      {"run",
       {
           {"seed", Bind([](RunConfig& c) -> std::uint64_t& { return c.seed; })},
           {"curriculum", Bind([](RunConfig& c) -> bool& { return c.curriculum; })},
           {"travel_km", Bind([](RunConfig& c) -> double& { return c.travel_km; })},
           {"tau", Bind([](RunConfig& c) -> double& { return c.sft_emb.tau; })},
           {"beta", Bind([](RunConfig& c) -> double& { return c.align.beta; })},
       }},
      {"paths",
       {
           {"catalog", Bind([](RunConfig& c) -> std::filesystem::path& { return c.paths.catalog; })},
           {"dataset", Bind([](RunConfig& c) -> std::filesystem::path& { return c.paths.dataset; })},
           {"samples", Bind([](RunConfig& c) -> std::filesystem::path& { return c.paths.samples; })},
           {"checkpoint_dir",
            Bind([](RunConfig& c) -> std::filesystem::path& { return c.paths.checkpoint_dir; })},
           {"report_dir",
            Bind([](RunConfig& c) -> std::filesystem::path& { return c.paths.report_dir; })},
       }},
      {"pretrain", StageFields([](RunConfig& c) -> train::StageConfig& { return c.pretrain; })},
      {"sft_emb", StageFields([](RunConfig& c) -> train::StageConfig& { return c.sft_emb; })},
      {"sft_gen", StageFields([](RunConfig& c) -> train::StageConfig& { return c.sft_gen; })},
      {"align", StageFields([](RunConfig& c) -> train::StageConfig& { return c.align; })},
      {"synth",
       {
           {"num_users", Bind([](RunConfig& c) -> int& { return c.synth.num_users; })},
           {"num_pois", Bind([](RunConfig& c) -> int& { return c.synth.num_pois; })},
           {"min_actions", Bind([](RunConfig& c) -> int& { return c.synth.min_actions; })},
           {"max_actions", Bind([](RunConfig& c) -> int& { return c.synth.max_actions; })},
           {"noon_food", Bind([](RunConfig& c) -> double& { return c.synth.noon_food; })},
           {"afternoon_cafe", Bind([](RunConfig& c) -> double& { return c.synth.afternoon_cafe; })},
           {"travel_attraction",
            Bind([](RunConfig& c) -> double& { return c.synth.travel_attraction; })},
           {"noon_share", Bind([](RunConfig& c) -> double& { return c.synth.noon_share; })},
           {"afternoon_share",
            Bind([](RunConfig& c) -> double& { return c.synth.afternoon_share; })},
           {"trip_probability",
            Bind([](RunConfig& c) -> double& { return c.synth.trip_probability; })},
           {"uniform_categories",
            Bind([](RunConfig& c) -> bool& { return c.synth.uniform_categories; })},
           {"route_mode", Bind([](RunConfig& c) -> bool& { return c.synth.route_mode; })},
           {"nearest_choices", Bind([](RunConfig& c) -> int& { return c.synth.nearest_choices; })},
           {"mm_dim", Bind([](RunConfig& c) -> int& { return c.synth.mm_dim; })},
           {"sft_per_user", Bind([](RunConfig& c) -> int& { return c.synth.sft_per_user; })},
           {"sft_negatives", Bind([](RunConfig& c) -> int& { return c.synth.sft_negatives; })},
       }},
      {"cleanse",
       {
           {"r_min", Bind([](RunConfig& c) -> double& { return c.cleanse.r_min; })},
           {"functional",
            Bind([](RunConfig& c) -> std::vector<std::string>& { return c.cleanse.functional; })},
           {"search_ratio_threshold",
            Bind([](RunConfig& c) -> double& { return c.cleanse.search_ratio_threshold; })},
           {"hard_drop_functional",
            Bind([](RunConfig& c) -> bool& { return c.cleanse.hard_drop_functional; })},
       }},
      {"preference",
       {
           {"hour", Bind([](RunConfig& c) -> int& { return c.preference.hour; })},
           {"positive_top_level",
            Bind([](RunConfig& c) -> std::string& { return c.preference.positive_top_level; })},
           {"negatives", Bind([](RunConfig& c) -> int& { return c.preference.negatives; })},
           {"negative_pool", Bind([](RunConfig& c) -> int& { return c.preference.negative_pool; })},
       }},
      {"eval",
       {
           {"w_block", Bind([](RunConfig& c) -> int& { return c.eval.w_block; })},
           {"w_inner", Bind([](RunConfig& c) -> int& { return c.eval.w_inner; })},
           {"policy", Bind([](RunConfig& c) -> std::string& { return c.eval.policy; })},
           {"discovery_k",
            Bind([](RunConfig& c) -> std::vector<int>& { return c.eval.discovery_k; })},
           {"discovery_m",
            Bind([](RunConfig& c) -> std::vector<int>& { return c.eval.discovery_m; })},
       }},
  };
  return *schema;
}

const Section* FindSection(const std::string& name) {
  for (const auto& [n, fields] : Schema()) {
    if (n == name) return &fields;
  }
  return nullptr;
}

}  // namespace

void RunConfig::Finalize() {
  model.Validate();
  for (train::StageConfig* s : {&pretrain, &sft_emb, &sft_gen, &align}) {
    s->seed = seed;
    s->Validate();
  }
  if (!(travel_km > 0)) throw UsageError("travel_km must be > 0");
  if (!(cleanse.r_min >= 0 && cleanse.r_min <= 1)) throw UsageError("r_min must be in [0, 1]");
  if (eval.policy != "last" && eval.policy != "every") {
    throw UsageError("eval policy must be 'last' or 'every'");
  }
  if (eval.w_block < 1 || eval.w_inner < 1) throw UsageError("beam widths must be >= 1");
  synth.Validate();
}

RunConfig ParseRunConfig(const std::string& text) {
  RunConfig config;
  std::string section = "run";
  std::stringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw UsageError(where + "unterminated section header");
      section = Trim(line.substr(1, line.size() - 2));
      if (section != "model" && !FindSection(section)) {
        throw UsageError(where + "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(where + "expected key=value");
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    try {
      if (section == "model") {
        std::string bad;
        if (!config.model.Set(key, value, &bad)) {
          throw UsageError("unknown key '" + key + "' in [model]");
        }
        continue;
      }
      const Section& fields = *FindSection(section);
      bool found = false;
      for (const auto& [name, field] : fields) {
        if (name == key) {
          field.set(config, section + "." + key, value);
          found = true;
          break;
        }
      }
      if (!found) throw UsageError("unknown key '" + key + "' in [" + section + "]");
    } catch (const UsageError& e) {
      throw UsageError(where + e.what());
    }
  }
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseRunConfig(buf.str());
}

std::string ToText(const RunConfig& config) {
  std::string out;
  for (const auto& [section, fields] : Schema()) {
    out += "[" + section + "]\n";
    for (const auto& [name, field] : fields) out += name + " = " + field.get(config) + "\n";
    out += "\n";
    if (section == "paths") {
      out += "[model]\n";
      for (const auto& [k, v] : config.model.ToKeyValues()) out += k + " = " + v + "\n";
      out += "\n";
    }
  }
  return out;
}

std::string ConfigDigest(const RunConfig& config) { return Sha1Hex(ToText(config)); }

}  // namespace stgr::cli
