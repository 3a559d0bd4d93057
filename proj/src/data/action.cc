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

#include "stgr/data/action.h"

#include <chrono>

#include "stgr/common/error.h"

namespace stgr::data {
namespace {

constexpr std::array<std::string_view, kNumActionTypes> kActionNames = {
    "click", "search", "navigate", "favorite"};
constexpr std::array<std::string_view, kNumGenders> kGenderNames = {
    "unknown", "female", "male"};
constexpr std::array<std::string_view, kNumAgeBuckets> kAgeNames = {
    "unknown", "<18", "18-24", "25-34", "35-44", "45-54", "55-64", "65+"};
constexpr std::array<std::string_view, kNumOccupations> kOccupationNames = {
    "unknown", "student",  "office_worker", "service",
    "self_employed", "retired", "other"};

template <std::size_t N>
int ParseName(const std::array<std::string_view, N>& names,
              std::string_view name, const char* what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  throw DataError(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

template <std::size_t N>
std::string_view NameAt(const std::array<std::string_view, N>& names, int i) {
  if (i < 0 || i >= static_cast<int>(N)) return names[0];
  return names[i];
}

}  // namespace

std::string_view ActionTypeName(ActionType a) {
  return NameAt(kActionNames, static_cast<int>(a));
}

ActionType ParseActionType(std::string_view name) {
  return static_cast<ActionType>(ParseName(kActionNames, name, "action type"));
}

std::string_view GenderName(int gender) { return NameAt(kGenderNames, gender); }
std::string_view AgeBucketName(int bucket) { return NameAt(kAgeNames, bucket); }
std::string_view OccupationName(int occupation) {
  return NameAt(kOccupationNames, occupation);
}
int ParseGender(std::string_view name) {
  return ParseName(kGenderNames, name, "gender");
}
int ParseAgeBucket(std::string_view name) {
  return ParseName(kAgeNames, name, "age bucket");
}
int ParseOccupation(std::string_view name) {
  return ParseName(kOccupationNames, name, "occupation");
}

std::array<int, 3> ProfileRows(const UserProfile& profile) {
  if (profile.gender < 0 || profile.gender >= kNumGenders ||
      profile.age_bucket < 0 || profile.age_bucket >= kNumAgeBuckets ||
      profile.occupation < 0 || profile.occupation >= kNumOccupations) {
    throw DataError("profile field outside its closed vocabulary");
  }
  return {profile.gender, kNumGenders + profile.age_bucket,
          kNumGenders + kNumAgeBuckets + profile.occupation};
}

bool HasThirteenDigits(std::int64_t t) {
  return t >= 1'000'000'000'000LL && t < 10'000'000'000'000LL;
}

void ValidateSample(const SequenceSample& sample) {
  const std::string who = "user " + sample.user_id;
  ProfileRows(sample.profile);
  for (std::size_t i = 0; i < sample.actions.size(); ++i) {
    const Action& a = sample.actions[i];
    if (!HasThirteenDigits(a.t)) {
      throw DataError(who + ": timestamp " + std::to_string(a.t) +
                      " is not a 13-digit millisecond value");
    }
    if (a.interest != 0 && a.interest != 1) {
      throw DataError(who + ": interest flag must be 0 or 1");
    }
    if (!geo::IsValid(a.g_u) || !geo::IsValid(a.g_p)) {
      throw DataError(who + ": invalid coordinates");
    }
    if (i > 0 && sample.actions[i - 1].t > a.t) {
      throw DataError(who + ": actions are not sorted by time");
    }
  }
}

TimeFeatures DecomposeTime(std::int64_t t_ms) {
  using namespace std::chrono;
  const sys_time<milliseconds> tp{milliseconds{t_ms}};
  const sys_days day = floor<days>(tp);
  const year_month_day ymd{day};
  TimeFeatures f;
  f.month = static_cast<int>(static_cast<unsigned>(ymd.month())) - 1;
  f.day = static_cast<int>(static_cast<unsigned>(ymd.day())) - 1;
  f.weekday = static_cast<int>(weekday{day}.c_encoding());
  f.hour = static_cast<int>(duration_cast<hours>(tp - day).count());
  return f;
}

std::int64_t UtcDay(std::int64_t t_ms) {
  using namespace std::chrono;
  const sys_time<milliseconds> tp{milliseconds{t_ms}};
  return floor<days>(tp).time_since_epoch().count();
}

std::int64_t MakeTimestamp(int year, int month, int day, int hour, int minute,
                           int second) {
  using namespace std::chrono;
  const sys_days d = year_month_day{std::chrono::year{year},
                                    std::chrono::month{static_cast<unsigned>(month)},
                                    std::chrono::day{static_cast<unsigned>(day)}};
  const auto tp = d + hours{hour} + minutes{minute} + seconds{second};
  return duration_cast<milliseconds>(tp.time_since_epoch()).count();
}

}  // namespace stgr::data
