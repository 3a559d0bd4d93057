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

#ifndef STGR_DATA_CURRICULUM_H_
#define STGR_DATA_CURRICULUM_H_

#include <string_view>
#include <vector>

#include "stgr/data/action.h"
#include "stgr/geo/geo.h"

namespace stgr::data {

enum class TravelStatus { kLocal, kPreTravel, kInTravel };

std::string_view TravelStatusName(TravelStatus s);

struct CurriculumConfig {
  geo::BlockGrid grid;          // home-anchor grid (5 km cells)
  double travel_km = 100.0;
};

// Modal block cell of the user locations; ties go to the cell seen first.
// Throws DataError on an empty sequence.
geo::CellCoord HomeAnchor(const SequenceSample& seq, const geo::BlockGrid& grid);

// InTravel when the user is more than travel_km from home; PreTravel when the
// user is local but the POI is farther than travel_km; Local otherwise.
TravelStatus Classify(const Action& a, const geo::GeoPoint& home_center,
                      double travel_km);

struct Segment {
  TravelStatus status;
  SequenceSample subsequence;
};

// Maximal same-status runs, in order; concatenated they reproduce `seq`.
std::vector<Segment> PartitionSequence(const SequenceSample& seq,
                                       const CurriculumConfig& config);

struct CurriculumSplit {
  Dataset single;  // every status-homogeneous subsequence
  Dataset multi;   // original sequences with two or more statuses
};

// Subsequence user ids are "<user_id>#<segment>".
CurriculumSplit PartitionCurriculum(const Dataset& dataset,
                                    const CurriculumConfig& config);

}  // namespace stgr::data

#endif  // STGR_DATA_CURRICULUM_H_
