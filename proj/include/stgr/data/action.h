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

#ifndef STGR_DATA_ACTION_H_
#define STGR_DATA_ACTION_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stgr/catalog/catalog.h"
#include "stgr/geo/geo.h"

namespace stgr::data {

using catalog::PoiId;
using geo::GeoPoint;

enum class ActionType : int { kClick = 0, kSearch, kNavigate, kFavorite };
inline constexpr int kNumActionTypes = 4;

std::string_view ActionTypeName(ActionType a);
ActionType ParseActionType(std::string_view name);

// Closed profile vocabularies; index 0 is "unknown" in each.
enum class Gender : int { kUnknown = 0, kFemale, kMale };
inline constexpr int kNumGenders = 3;
inline constexpr int kNumAgeBuckets = 8;
inline constexpr int kNumOccupations = 7;
inline constexpr int kNumProfileTokens =
    kNumGenders + kNumAgeBuckets + kNumOccupations;

std::string_view GenderName(int gender);
std::string_view AgeBucketName(int bucket);
std::string_view OccupationName(int occupation);
int ParseGender(std::string_view name);
int ParseAgeBucket(std::string_view name);
int ParseOccupation(std::string_view name);

struct UserProfile {
  int gender = 0;
  int age_bucket = 0;
  int occupation = 0;

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

// Rows of the profile token table: [genders][age buckets][occupations].
std::array<int, 3> ProfileRows(const UserProfile& profile);

struct Action {
  std::int64_t t = 0;  // epoch milliseconds, 13 digits
  GeoPoint g_u;
  PoiId poi = 0;
  GeoPoint g_p;
  std::vector<std::string> category;
  ActionType action_type = ActionType::kClick;
  int interest = 1;  // It

  friend bool operator==(const Action&, const Action&) = default;
};

struct SequenceSample {
  std::string user_id;
  UserProfile profile;
  std::vector<Action> actions;  // ascending t

  friend bool operator==(const SequenceSample&, const SequenceSample&) = default;
};

using Dataset = std::vector<SequenceSample>;

bool HasThirteenDigits(std::int64_t t);

// Throws DataError for a bad timestamp, It outside {0,1}, invalid
// coordinates, or out-of-order actions.
void ValidateSample(const SequenceSample& sample);

// UTC calendar features of a millisecond timestamp.
struct TimeFeatures {
  int month = 0;    // 0..11
  int weekday = 0;  // 0..6, Sunday = 0
  int day = 0;      // 0..30 (day of month - 1)
  int hour = 0;     // 0..23

  friend bool operator==(const TimeFeatures&, const TimeFeatures&) = default;
};

TimeFeatures DecomposeTime(std::int64_t t_ms);

// Days since the epoch (UTC) containing t_ms.
std::int64_t UtcDay(std::int64_t t_ms);

// Milliseconds for a UTC calendar instant.
std::int64_t MakeTimestamp(int year, int month, int day, int hour,
                           int minute = 0, int second = 0);

}  // namespace stgr::data

#endif  // STGR_DATA_ACTION_H_
