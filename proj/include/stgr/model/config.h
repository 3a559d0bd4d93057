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

#ifndef STGR_MODEL_CONFIG_H_
#define STGR_MODEL_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>

#include "stgr/catalog/index.h"
#include "stgr/nn/decoder.h"

namespace stgr::model {

enum class Mode { kOnline, kCheckin };
std::string_view ModeName(Mode m);
Mode ParseMode(std::string_view name);

struct ModelConfig {
  nn::DecoderConfig decoder;
  // Width of each of the four calendar tables (month, weekday, day, hour);
  // 4 * time_sub_dim must equal the model width.
  int time_sub_dim = 16;
  // Geo ladder: geo_levels tables of geo_dim columns; levels * dim must
  // equal the model width.
  int geo_levels = 8;
  int geo_dim = 8;
  std::uint32_t geo_table_size = 4096;
  double geo_base_cell_km = 0.5;
  double geo_growth = 2.0;
  std::uint64_t geo_seed = 0x5eedULL;
  double block_cell_km = 5.0;
  int max_len = 128;   // most recent actions kept
  int embed_dim = 64;  // d_e of the dual towers
  Mode mode = Mode::kOnline;
  catalog::IndexScheme index_scheme = catalog::IndexScheme::kGeoGrid;
  int hashed_buckets = 0;      // 0: as many buckets as geo blocks
  bool spatiotemporal = true;  // false: u-tokens become one learned vector
  bool multimodal = false;     // fuse catalog mm_vectors into POI tokens
  double init_std = 0.02;

  // 2 layers, width 64, 4 heads, ffn 128.
  static ModelConfig Desk();
  // 12 layers, width 768, 32 heads, ffn 2048, calendar tables of 192,
  // 12 geo tables of 64.
  static ModelConfig FullScale();

  // Throws UsageError when the widths do not add up.
  void Validate() const;

  // Flat key=value form used by manifests and config files.
  std::map<std::string, std::string> ToKeyValues() const;
  // Applies known keys; returns false for an unknown key (name in *bad_key).
  bool Set(const std::string& key, const std::string& value, std::string* bad_key);
};

}  // namespace stgr::model

#endif  // STGR_MODEL_CONFIG_H_
