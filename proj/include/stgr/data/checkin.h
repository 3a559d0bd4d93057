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

#ifndef STGR_DATA_CHECKIN_H_
#define STGR_DATA_CHECKIN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "stgr/catalog/catalog.h"
#include "stgr/data/action.h"

namespace stgr::data {

// Column layout of a delimited check-in file. Indices are zero-based.
struct CheckinSchema {
  char delimiter = '\t';
  bool header = false;
  int user = 0;
  int poi = 1;
  int lat = 2;
  int lon = 3;
  int category = 4;
  int timestamp = 5;
};

struct CheckinResult {
  catalog::Catalog catalog;
  Dataset dataset;
  std::int64_t rows = 0;
  std::int64_t warnings = 0;  // malformed rows skipped
  // External POI key for each catalog poi_id (poi_id = position + 1).
  std::vector<std::string> poi_keys;
};

// Accepts epoch seconds (10 digits), epoch milliseconds (13 digits),
// ISO 8601 "YYYY-MM-DDTHH:MM:SS[Z]" and the Foursquare form
// "Tue Apr 03 18:00:09 +0000 2012". Returns false when unparseable.
bool ParseCheckinTime(const std::string& text, std::int64_t* t_ms);

// Check-in mode: g_u = g_p, a single action type, It = 1. One sequence per
// user ordered by time; users ordered by key. Throws DataError when the
// file cannot be opened or yields no valid rows.
CheckinResult IngestCheckins(const std::string& path, const CheckinSchema& schema);

}  // namespace stgr::data

#endif  // STGR_DATA_CHECKIN_H_
