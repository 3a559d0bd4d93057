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

#include "stgr/model/config.h"

#include <charconv>
#include <functional>
#include <sstream>

#include "stgr/common/error.h"

namespace stgr::model {

std::string_view ModeName(Mode m) { return m == Mode::kOnline ? "online" : "checkin"; }

Mode ParseMode(std::string_view name) {
  if (name == "online") return Mode::kOnline;
  if (name == "checkin") return Mode::kCheckin;
  throw UsageError("unknown mode '" + std::string(name) + "' (online|checkin)");
}

ModelConfig ModelConfig::Desk() { return ModelConfig{}; }

ModelConfig ModelConfig::FullScale() {
  ModelConfig c;
  c.decoder.layers = 12;
  c.decoder.dim = 768;
  c.decoder.heads = 32;
  c.decoder.ffn_dim = 2048;
  c.time_sub_dim = 192;
  c.geo_levels = 12;
  c.geo_dim = 64;
  c.geo_table_size = 65536;
  return c;
}

void ModelConfig::Validate() const {
  decoder.Validate();
  if (4 * time_sub_dim != decoder.dim) {
    throw UsageError("4 * time_sub_dim must equal dim (" + std::to_string(4 * time_sub_dim) +
                     " vs " + std::to_string(decoder.dim) + ")");
  }
  if (geo_levels < 1 || geo_levels * geo_dim != decoder.dim) {
    throw UsageError("geo_levels * geo_dim must equal dim (" +
                     std::to_string(geo_levels * geo_dim) + " vs " +
                     std::to_string(decoder.dim) + ")");
  }
  if (geo_table_size < 2) throw UsageError("geo_table_size must be >= 2");
  if (max_len < 1) throw UsageError("max_len must be >= 1");
  if (embed_dim < 1) throw UsageError("embed_dim must be >= 1");
  if (!(block_cell_km > 0)) throw UsageError("block_cell_km must be > 0");
  if (hashed_buckets < 0) throw UsageError("hashed_buckets must be >= 0");
  if (!(init_std > 0)) throw UsageError("init_std must be > 0");
  if (mode == Mode::kCheckin && index_scheme != catalog::IndexScheme::kSingleLevel) {
    throw UsageError("checkin mode requires the single-level index");
  }
}

namespace {

template <typename V>
std::string Str(V v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <typename V>
V Parse(const std::string& key, const std::string& s) {
  V v{};
  if constexpr (std::is_same_v<V, double>) {
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
      throw UsageError("bad number for " + key + ": '" + s + "'");
    }
  } else {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw UsageError("bad integer for " + key + ": '" + s + "'");
    }
  }
  return v;
}

bool ParseBool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw UsageError("bad boolean for " + key + ": '" + s + "'");
}

}  // namespace

std::map<std::string, std::string> ModelConfig::ToKeyValues() const {
  return {
      {"layers", Str(decoder.layers)},
      {"dim", Str(decoder.dim)},
      {"heads", Str(decoder.heads)},
      {"ffn_dim", Str(decoder.ffn_dim)},
      {"norm_eps", Str(decoder.norm_eps)},
      {"rope_base", Str(decoder.rope_base)},
      {"time_sub_dim", Str(time_sub_dim)},
      {"geo_levels", Str(geo_levels)},
      {"geo_dim", Str(geo_dim)},
      {"geo_table_size", Str(geo_table_size)},
      {"geo_base_cell_km", Str(geo_base_cell_km)},
      {"geo_growth", Str(geo_growth)},
      {"geo_seed", Str(geo_seed)},
      {"block_cell_km", Str(block_cell_km)},
      {"max_len", Str(max_len)},
      {"embed_dim", Str(embed_dim)},
      {"mode", std::string(ModeName(mode))},
      {"index_scheme", std::string(catalog::SchemeName(index_scheme))},
      {"hashed_buckets", Str(hashed_buckets)},
      {"spatiotemporal", spatiotemporal ? "true" : "false"},
      {"multimodal", multimodal ? "true" : "false"},
      {"init_std", Str(init_std)},
  };
}

bool ModelConfig::Set(const std::string& key, const std::string& value,
                      std::string* bad_key) {
  static const std::map<std::string, std::function<void(ModelConfig&, const std::string&,
                                                        const std::string&)>>
      kSetters = {
          {"layers", [](auto& c, auto& k, auto& v) { c.decoder.layers = Parse<int>(k, v); }},
          {"dim", [](auto& c, auto& k, auto& v) { c.decoder.dim = Parse<int>(k, v); }},
          {"heads", [](auto& c, auto& k, auto& v) { c.decoder.heads = Parse<int>(k, v); }},
          {"ffn_dim", [](auto& c, auto& k, auto& v) { c.decoder.ffn_dim = Parse<int>(k, v); }},
          {"norm_eps",
           [](auto& c, auto& k, auto& v) { c.decoder.norm_eps = Parse<double>(k, v); }},
          {"rope_base",
           [](auto& c, auto& k, auto& v) { c.decoder.rope_base = Parse<double>(k, v); }},
          {"time_sub_dim", [](auto& c, auto& k, auto& v) { c.time_sub_dim = Parse<int>(k, v); }},
          {"geo_levels", [](auto& c, auto& k, auto& v) { c.geo_levels = Parse<int>(k, v); }},
          {"geo_dim", [](auto& c, auto& k, auto& v) { c.geo_dim = Parse<int>(k, v); }},
          {"geo_table_size",
           [](auto& c, auto& k, auto& v) { c.geo_table_size = Parse<std::uint32_t>(k, v); }},
          {"geo_base_cell_km",
           [](auto& c, auto& k, auto& v) { c.geo_base_cell_km = Parse<double>(k, v); }},
          {"geo_growth", [](auto& c, auto& k, auto& v) { c.geo_growth = Parse<double>(k, v); }},
          {"geo_seed", [](auto& c, auto& k, auto& v) { c.geo_seed = Parse<std::uint64_t>(k, v); }},
          {"block_cell_km",
           [](auto& c, auto& k, auto& v) { c.block_cell_km = Parse<double>(k, v); }},
          {"max_len", [](auto& c, auto& k, auto& v) { c.max_len = Parse<int>(k, v); }},
          {"embed_dim", [](auto& c, auto& k, auto& v) { c.embed_dim = Parse<int>(k, v); }},
          {"mode", [](auto& c, auto&, auto& v) { c.mode = ParseMode(v); }},
          {"index_scheme",
           [](auto& c, auto&, auto& v) { c.index_scheme = catalog::ParseScheme(v); }},
          {"hashed_buckets",
           [](auto& c, auto& k, auto& v) { c.hashed_buckets = Parse<int>(k, v); }},
          {"spatiotemporal",
           [](auto& c, auto& k, auto& v) { c.spatiotemporal = ParseBool(k, v); }},
          {"multimodal", [](auto& c, auto& k, auto& v) { c.multimodal = ParseBool(k, v); }},
          {"init_std", [](auto& c, auto& k, auto& v) { c.init_std = Parse<double>(k, v); }},
      };
  auto it = kSetters.find(key);
  if (it == kSetters.end()) {
    if (bad_key) *bad_key = key;
    return false;
  }
  it->second(*this, key, value);
  return true;
}

}  // namespace stgr::model
