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

#ifndef STGR_DATA_SYNTH_H_
#define STGR_DATA_SYNTH_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stgr/catalog/catalog.h"
#include "stgr/data/action.h"
#include "stgr/data/sft.h"

namespace stgr::data {

// Which planted rule produced an action (hidden ground truth).
enum class SynthRule : int {
  kNoonFood = 0,      // hour in [11, 13] -> food
  kAfternoonCafe,     // hour 15 -> cafe
  kTravelAttraction,  // user far from home -> attraction
  kPreTravel,         // at home, browsing the trip destination
  kPersonal,          // user's own habits
  kUniform,           // uniformly random category
  kRoute,             // deterministic successor route
};
std::string_view SynthRuleName(SynthRule r);

struct CitySpec {
  std::string name;
  GeoPoint center;
  double radius_km = 8.0;
};

struct SynthConfig {
  int num_users = 200;
  int num_pois = 300;
  int min_actions = 20;
  int max_actions = 40;
  std::vector<CitySpec> cities;
  // Category paths; the top-level names "food", "cafe" and "attraction" are
  // targeted by the planted rules.
  std::vector<std::vector<std::string>> categories;
  // Top-level names labeled functional (It = 0).
  std::vector<std::string> functional_top_levels = {"office", "medical"};

  // Probability that each rule decides an action when its condition holds.
  double noon_food = 1.0;
  double afternoon_cafe = 1.0;
  double travel_attraction = 1.0;
  // Hour mix: share of actions at 11-13h and at 15h; the rest spread over
  // the other waking hours.
  double noon_share = 0.3;
  double afternoon_share = 0.2;

  double trip_probability = 0.3;  // per user
  int trip_min_actions = 3;
  int trip_max_actions = 6;
  int pre_travel_actions = 2;

  // Every action picks a category uniformly at random (overrides the rules).
  bool uniform_categories = false;
  // Memorization layout: each user walks a cyclic route over all POIs; the
  // route order depends on the user's occupation.
  bool route_mode = false;

  int nearest_choices = 3;  // users pick among the k nearest matching POIs
  int mm_dim = 0;           // > 0 attaches synthetic multimodal vectors

  int sft_per_user = 0;     // ranking samples cut from each user's history
  int sft_negatives = 10;

  std::int64_t start_ms = 1709251200000LL;  // 2024-03-01T00:00:00Z

  // Three cities well beyond the default 100 km travel threshold from each
  // other, and the default category list.
  static SynthConfig Default();
  void Validate() const;
};

struct SynthResult {
  catalog::Catalog catalog;
  Dataset dataset;
  // rules[u][i] generated dataset[u].actions[i].
  std::vector<std::vector<SynthRule>> rules;
  std::vector<SftSample> sft;
  // Home city per user.
  std::vector<int> home_city;
};

// Deterministic in (config, seed).
SynthResult SynthGenerate(const SynthConfig& config, std::uint64_t seed);

// Top-level category name ("food" for {"food", "noodles"}).
std::string TopLevel(const std::vector<std::string>& category);

}  // namespace stgr::data

#endif  // STGR_DATA_SYNTH_H_
