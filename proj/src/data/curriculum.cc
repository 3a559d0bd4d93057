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

#include "stgr/data/curriculum.h"

#include <map>

#include "stgr/common/error.h"

namespace stgr::data {

std::string_view TravelStatusName(TravelStatus s) {
  switch (s) {
    case TravelStatus::kLocal:
      return "local";
    case TravelStatus::kPreTravel:
      return "pre_travel";
    case TravelStatus::kInTravel:
      return "in_travel";
  }
  return "local";
}

geo::CellCoord HomeAnchor(const SequenceSample& seq, const geo::BlockGrid& grid) {
  if (seq.actions.empty()) {
    throw DataError("home anchor of empty sequence (user " + seq.user_id + ")");
  }
  struct Tally {
    int count = 0;
    std::size_t first_seen = 0;
  };
  std::map<geo::CellCoord, Tally> tally;
  for (std::size_t i = 0; i < seq.actions.size(); ++i) {
    auto [it, inserted] =
        tally.try_emplace(geo::BlockCell(seq.actions[i].g_u, grid));
    if (inserted) it->second.first_seen = i;
    ++it->second.count;
  }
  const std::pair<const geo::CellCoord, Tally>* best = nullptr;
  for (const auto& entry : tally) {
    if (best == nullptr || entry.second.count > best->second.count ||
        (entry.second.count == best->second.count &&
         entry.second.first_seen < best->second.first_seen)) {
      best = &entry;
    }
  }
  return best->first;
}

TravelStatus Classify(const Action& a, const geo::GeoPoint& home_center,
                      double travel_km) {
  if (geo::HaversineKm(a.g_u, home_center) > travel_km) {
    return TravelStatus::kInTravel;
  }
  if (geo::HaversineKm(a.g_p, home_center) > travel_km) {
    return TravelStatus::kPreTravel;
  }
  return TravelStatus::kLocal;
}

std::vector<Segment> PartitionSequence(const SequenceSample& seq,
                                       const CurriculumConfig& config) {
  std::vector<Segment> out;
  if (seq.actions.empty()) return out;
  const geo::GeoPoint home =
      geo::CellCenter(HomeAnchor(seq, config.grid), config.grid);
  for (const Action& a : seq.actions) {
    const TravelStatus s = Classify(a, home, config.travel_km);
    if (out.empty() || out.back().status != s) {
      SequenceSample sub;
      sub.user_id = seq.user_id + "#" + std::to_string(out.size());
      sub.profile = seq.profile;
      out.push_back({s, std::move(sub)});
    }
    out.back().subsequence.actions.push_back(a);
  }
  return out;
}

CurriculumSplit PartitionCurriculum(const Dataset& dataset,
                                    const CurriculumConfig& config) {
  CurriculumSplit split;
  for (const auto& seq : dataset) {
    auto segments = PartitionSequence(seq, config);
    bool mixed = false;
    for (std::size_t i = 1; i < segments.size() && !mixed; ++i) {
      mixed = segments[i].status != segments[0].status;
    }
    for (auto& seg : segments) split.single.push_back(std::move(seg.subsequence));
    if (mixed) split.multi.push_back(seq);
  }
  return split;
}

}  // namespace stgr::data
