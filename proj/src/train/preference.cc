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

#include "stgr/train/preference.h"

#include <algorithm>
#include <random>

#include "stgr/common/error.h"

namespace stgr::train {

namespace {

void AddSample(PreferenceSet& set, data::SftSample s) {
  if (s.positives.empty() || s.negatives.empty()) {
    ++set.skipped;
    return;
  }
  const int index = static_cast<int>(set.samples.size());
  for (catalog::PoiId p : s.positives) {
    for (catalog::PoiId n : s.negatives) set.pairs.push_back({index, p, n});
  }
  set.samples.push_back(std::move(s));
}

}  // namespace

PreferenceSet PairsFromRanking(const std::vector<data::SftSample>& ranking) {
  PreferenceSet set;
  for (const auto& s : ranking) AddSample(set, s);
  return set;
}

PreferenceSet PairsFromRule(const data::Dataset& dataset, const catalog::Catalog& catalog,
                            const PreferenceRule& rule, std::uint64_t seed) {
  if (rule.hour < 0 || rule.hour > 23) throw UsageError("rule hour must be in [0, 23]");
  if (rule.negatives < 1 || rule.negative_pool < rule.negatives) {
    throw UsageError("rule needs 1 <= negatives <= negative_pool");
  }
  std::mt19937_64 rng(seed);
  PreferenceSet set;
  constexpr std::int64_t kDayMs = 86400000LL;
  for (const auto& seq : dataset) {
    if (seq.actions.empty()) {
      ++set.skipped;
      continue;
    }
    const data::Action& last = seq.actions.back();
    data::SftSample s;
    s.user_id = seq.user_id + "@rule" + std::to_string(rule.hour);
    s.profile = seq.profile;
    s.history = seq.actions;
    s.request.t = (data::UtcDay(last.t) + 1) * kDayMs + rule.hour * 3600000LL;
    s.request.g = last.g_u;
    std::vector<std::pair<double, catalog::PoiId>> match, other;
    for (const auto& p : catalog.pois()) {
      const double km = geo::HaversineKm(s.request.g, p.location);
      const bool hit = !p.category.empty() && p.category.front() == rule.positive_top_level;
      (hit ? match : other).emplace_back(km, p.poi_id);
    }
    std::sort(match.begin(), match.end());
    std::sort(other.begin(), other.end());
    if (!match.empty()) s.positives.push_back(match.front().second);
    const std::size_t pool = std::min<std::size_t>(other.size(), rule.negative_pool);
    std::vector<catalog::PoiId> candidates;
    for (std::size_t i = 0; i < pool; ++i) candidates.push_back(other[i].second);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    candidates.resize(std::min<std::size_t>(candidates.size(), rule.negatives));
    s.negatives = candidates;
    AddSample(set, std::move(s));
  }
  return set;
}

}  // namespace stgr::train
