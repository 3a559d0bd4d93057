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

#ifndef STGR_TRAIN_PREFERENCE_H_
#define STGR_TRAIN_PREFERENCE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "stgr/catalog/catalog.h"
#include "stgr/data/action.h"
#include "stgr/data/sft.h"

namespace stgr::train {

// One preference: the positive should outrank the negative in the context
// of samples[sample]. Both share its history and request.
struct PreferencePair {
  int sample = 0;
  catalog::PoiId positive = 0;
  catalog::PoiId negative = 0;
};

struct PreferenceSet {
  std::vector<data::SftSample> samples;
  std::vector<PreferencePair> pairs;  // positives x negatives of every sample
  int skipped = 0;                    // sources without a positive or negative
};

// Clicked vs exposed-unclicked POIs of ranking samples.
PreferenceSet PairsFromRanking(const std::vector<data::SftSample>& ranking);

// "At `hour`, prefer a `positive_top_level` POI": the request falls on the
// day after each user's last action at that hour, at the user's last
// location. The positive is the nearest matching POI, negatives are drawn
// from the nearest non-matching ones.
struct PreferenceRule {
  int hour = 12;
  std::string positive_top_level = "food";
  int negatives = 1;
  int negative_pool = 5;
};
PreferenceSet PairsFromRule(const data::Dataset& dataset, const catalog::Catalog& catalog,
                            const PreferenceRule& rule, std::uint64_t seed);

}  // namespace stgr::train

#endif  // STGR_TRAIN_PREFERENCE_H_
