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

#include "stgr/data/cleanse.h"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "stgr/catalog/catalog.h"
#include "stgr/common/error.h"

namespace stgr::data {

double SearchRatio(const PoiSearchStats& s) {
  const std::int64_t total = s.searches + s.clicks;
  return total == 0 ? 0.0 : static_cast<double>(s.searches) / total;
}

std::unordered_map<PoiId, PoiSearchStats> CountPoiStats(const Dataset& dataset) {
  std::unordered_map<PoiId, PoiSearchStats> stats;
  for (const auto& seq : dataset) {
    for (const auto& a : seq.actions) {
      if (a.action_type == ActionType::kSearch) ++stats[a.poi].searches;
      if (a.action_type == ActionType::kClick) ++stats[a.poi].clicks;
    }
  }
  return stats;
}

int LabelIntent(const Action& action, const IntentRules& rules,
                IntentStats* stats) {
  if (stats) ++stats->labeled;
  bool functional = false;
  if (!action.category.empty()) {
    functional = rules.functional_categories.count(action.category.front()) ||
                 rules.functional_categories.count(
                     catalog::CategoryKey(action.category));
  }
  double ratio = 0.0;
  auto it = rules.poi_stats.find(action.poi);
  if (it == rules.poi_stats.end()) {
    if (stats) ++stats->missing_stats;
  } else {
    ratio = SearchRatio(it->second);
  }
  if (ratio >= rules.search_ratio_threshold) functional = true;
  if (functional && stats) ++stats->functional;
  return functional ? 0 : 1;
}

void LabelDataset(Dataset& dataset, const IntentRules& rules,
                  IntentStats* stats) {
  for (auto& seq : dataset) {
    for (auto& a : seq.actions) a.interest = LabelIntent(a, rules, stats);
  }
}

double Richness(const SequenceSample& seq) {
  if (seq.actions.empty()) {
    throw DataError("richness of empty sequence (user " + seq.user_id + ")");
  }
  std::unordered_set<PoiId> distinct;
  for (const auto& a : seq.actions) distinct.insert(a.poi);
  return static_cast<double>(distinct.size()) / seq.actions.size();
}

std::string CleanseStats::ToTable() const {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-18s %14s %14s %12s\n", "Filtering Step",
                "Sequence Num", "Action Num", "Filter Ratio");
  out += buf;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    char ratio[32];
    if (i == 0) {
      std::snprintf(ratio, sizeof(ratio), "-");
    } else {
      std::snprintf(ratio, sizeof(ratio), "%.1f%%", 100.0 * rows[i].filter_ratio);
    }
    std::snprintf(buf, sizeof(buf), "%-18s %14lld %14lld %12s\n",
                  rows[i].step.c_str(), static_cast<long long>(rows[i].sequences),
                  static_cast<long long>(rows[i].actions), ratio);
    out += buf;
  }
  return out;
}

namespace {

std::int64_t EligibleActions(const SequenceSample& s) {
  return std::count_if(s.actions.begin(), s.actions.end(),
                       [](const Action& a) { return a.interest == 1; });
}

double Ratio(std::int64_t before, std::int64_t after) {
  return before == 0 ? 0.0 : 1.0 - static_cast<double>(after) / before;
}

}  // namespace

Dataset Cleanse(const Dataset& dataset, const CleanseConfig& config,
                CleanseStats* stats) {
  std::int64_t coarse_actions = 0;
  for (const auto& s : dataset) coarse_actions += s.actions.size();

  Dataset stage1;
  stage1.reserve(dataset.size());
  std::int64_t eligible1 = 0;
  for (const auto& s : dataset) {
    SequenceSample kept{s.user_id, s.profile, {}};
    for (const auto& a : s.actions) {
      if (config.noise_action_types.count(a.action_type)) continue;
      if (config.hard_drop_functional && a.interest == 0) continue;
      kept.actions.push_back(a);
    }
    const std::int64_t eligible = EligibleActions(kept);
    if (eligible == 0) continue;
    eligible1 += eligible;
    stage1.push_back(std::move(kept));
  }

  Dataset stage2;
  stage2.reserve(stage1.size());
  std::int64_t eligible2 = 0;
  for (auto& s : stage1) {
    if (Richness(s) < config.r_min) continue;
    eligible2 += EligibleActions(s);
    stage2.push_back(std::move(s));
  }

  if (stats) {
    stats->rows = {
        {"coarse data", static_cast<std::int64_t>(dataset.size()),
         coarse_actions, 0.0},
        {"+ action level", static_cast<std::int64_t>(stage1.size()), eligible1,
         Ratio(coarse_actions, eligible1)},
        {"+ sequence level", static_cast<std::int64_t>(stage2.size()), eligible2,
         Ratio(eligible1, eligible2)},
    };
    stats->empty_result = stage2.empty();
  }
  return stage2;
}

}  // namespace stgr::data
