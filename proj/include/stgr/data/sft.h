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

#ifndef STGR_DATA_SFT_H_
#define STGR_DATA_SFT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "stgr/data/action.h"

namespace stgr::data {

// Spatiotemporal context of a request: the (m+1)-th action's time and user
// location.
struct RequestContext {
  std::int64_t t = 0;
  GeoPoint g;

  friend bool operator==(const RequestContext&, const RequestContext&) = default;
};

// Ranking sample: clicked POIs (y = 1) and exposed-but-unclicked POIs (y = 0)
// for one request.
struct SftSample {
  std::string user_id;
  UserProfile profile;
  std::vector<Action> history;
  RequestContext request;
  std::vector<PoiId> positives;
  std::vector<PoiId> negatives;
};

// Throws DataError when positives and negatives overlap or positives is
// empty.
void ValidateSft(const SftSample& s);

}  // namespace stgr::data

#endif  // STGR_DATA_SFT_H_
