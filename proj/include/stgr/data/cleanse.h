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

#ifndef STGR_DATA_CLEANSE_H_
#define STGR_DATA_CLEANSE_H_

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "stgr/data/action.h"

namespace stgr::data {

struct PoiSearchStats {
  std::int64_t searches = 0;
  std::int64_t clicks = 0;
};

// Functional-vs-interest labeling rules.
struct IntentRules {
  // Category keys ("medical/hospital") or top-level names ("medical") whose
  // actions are functional.
  std::set<std::string> functional_categories;
  // Share of searches among searches + clicks at or above which a POI is
  // functional. Ties are functional.
  double search_ratio_threshold = 0.7;
  std::unordered_map<PoiId, PoiSearchStats> poi_stats;
};

struct IntentStats {
  std::int64_t labeled = 0;
  std::int64_t functional = 0;
  std::int64_t missing_stats = 0;  // treated as ratio 0
};

// searches / (searches + clicks); 0 when the POI has no events.
double SearchRatio(const PoiSearchStats& s);

// Per-POI search and click counts over a dataset.
std::unordered_map<PoiId, PoiSearchStats> CountPoiStats(const Dataset& dataset);

// It = 0 when the category is functional or the POI's search ratio reaches
// the threshold; 1 otherwise.
int LabelIntent(const Action& action, const IntentRules& rules,
                IntentStats* stats = nullptr);

void LabelDataset(Dataset& dataset, const IntentRules& rules,
                  IntentStats* stats = nullptr);

// Distinct POIs / actions. Throws DataError on an empty sequence.
double Richness(const SequenceSample& seq);

struct CleanseConfig {
  double r_min = 0.3;  // keep iff R >= r_min
  // Remove It = 0 actions from the sequences instead of keeping them as
  // context-only inputs.
  bool hard_drop_functional = false;
  // Action types removed outright as noise.
  std::set<ActionType> noise_action_types;
};

struct CleanseRow {
  std::string step;
  std::int64_t sequences = 0;
  std::int64_t actions = 0;
  // Fraction of the previous row's actions removed by this step; absent on
  // the first row.
  double filter_ratio = 0.0;
};

struct CleanseStats {
  // coarse data, + action level, + sequence level.
  std::vector<CleanseRow> rows;
  bool empty_result = false;

  // Fixed-width table.
  std::string ToTable() const;
};

// Stage 1: drop noise action types; It = 0 actions stop counting toward the
// loss-eligible action total (or are removed when hard_drop_functional);
// sequences left with no eligible action are dropped. Stage 2: drop
// sequences with R < r_min. Idempotent.
Dataset Cleanse(const Dataset& dataset, const CleanseConfig& config,
                CleanseStats* stats = nullptr);

}  // namespace stgr::data

#endif  // STGR_DATA_CLEANSE_H_
