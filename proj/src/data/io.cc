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

#include "stgr/data/io.h"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "stgr/common/error.h"

namespace stgr::data {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json PointToJson(const GeoPoint& p) {
  return ordered_json::array({p.lon, p.lat});
}

GeoPoint PointFromJson(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw DataError("coordinate must be [lon, lat]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json ProfileToJson(const UserProfile& p) {
  ordered_json j;
  j["gender"] = GenderName(p.gender);
  j["age"] = AgeBucketName(p.age_bucket);
  j["occupation"] = OccupationName(p.occupation);
  return j;
}

UserProfile ProfileFromJson(const json& j) {
  UserProfile p;
  if (j.contains("gender")) p.gender = ParseGender(j["gender"].get<std::string>());
  if (j.contains("age")) p.age_bucket = ParseAgeBucket(j["age"].get<std::string>());
  if (j.contains("occupation")) {
    p.occupation = ParseOccupation(j["occupation"].get<std::string>());
  }
  return p;
}

ordered_json ActionToJson(const Action& a) {
  ordered_json j;
  j["t"] = a.t;
  j["gu"] = PointToJson(a.g_u);
  j["poi"] = a.poi;
  j["gp"] = PointToJson(a.g_p);
  j["cat"] = a.category;
  j["act"] = ActionTypeName(a.action_type);
  j["it"] = a.interest;
  return j;
}

Action ActionFromJson(const json& j) {
  Action a;
  a.t = j.at("t").get<std::int64_t>();
  a.g_u = PointFromJson(j.at("gu"));
  a.poi = j.at("poi").get<PoiId>();
  a.g_p = PointFromJson(j.at("gp"));
  const auto& cat = j.at("cat");
  a.category = cat.is_string() ? std::vector<std::string>{cat.get<std::string>()}
                               : cat.get<std::vector<std::string>>();
  a.action_type = ParseActionType(j.at("act").get<std::string>());
  a.interest = j.at("it").get<int>();
  return a;
}

ordered_json ActionsToJson(const std::vector<Action>& actions) {
  ordered_json arr = ordered_json::array();
  for (const Action& a : actions) arr.push_back(ActionToJson(a));
  return arr;
}

std::vector<Action> ActionsFromJson(const json& j) {
  if (!j.is_array()) throw DataError("actions must be an array");
  std::vector<Action> out;
  out.reserve(j.size());
  for (const auto& a : j) out.push_back(ActionFromJson(a));
  return out;
}

ordered_json SampleToJson(const SequenceSample& s) {
  ordered_json j;
  j["user_id"] = s.user_id;
  j["profile"] = ProfileToJson(s.profile);
  j["actions"] = ActionsToJson(s.actions);
  return j;
}

SequenceSample SampleFromJson(const json& j) {
  SequenceSample s;
  s.user_id = j.at("user_id").is_string() ? j["user_id"].get<std::string>()
                                          : j["user_id"].dump();
  s.profile = ProfileFromJson(j.value("profile", json::object()));
  s.actions = ActionsFromJson(j.at("actions"));
  ValidateSample(s);
  return s;
}

namespace {

template <typename T, typename Parse>
std::vector<T> ReadLines(const std::filesystem::path& path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<T> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(parse(json::parse(line)));
    } catch (const json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " +
                      e.what());
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return out;
}

template <typename T, typename ToJson>
void WriteLines(const std::vector<T>& items, const std::filesystem::path& path,
                ToJson to_json) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (const T& item : items) out << to_json(item).dump() << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace

Dataset ReadDataset(const std::filesystem::path& path) {
  return ReadLines<SequenceSample>(path, SampleFromJson);
}

void WriteDataset(const Dataset& dataset, const std::filesystem::path& path) {
  WriteLines(dataset, path, SampleToJson);
}

void ValidateSft(const SftSample& s) {
  if (s.positives.empty()) {
    throw DataError("sft sample " + s.user_id + " has no positives");
  }
  std::unordered_set<PoiId> pos(s.positives.begin(), s.positives.end());
  for (PoiId n : s.negatives) {
    if (pos.count(n)) {
      throw DataError("sft sample " + s.user_id + ": poi " + std::to_string(n) +
                      " is both positive and negative");
    }
  }
}

ordered_json SftToJson(const SftSample& s) {
  ordered_json j;
  j["user_id"] = s.user_id;
  j["profile"] = ProfileToJson(s.profile);
  j["actions"] = ActionsToJson(s.history);
  j["t_req"] = s.request.t;
  j["g_req"] = PointToJson(s.request.g);
  j["positives"] = s.positives;
  j["negatives"] = s.negatives;
  return j;
}

SftSample SftFromJson(const json& j) {
  SftSample s;
  s.user_id = j.value("user_id", std::string());
  s.profile = ProfileFromJson(j.value("profile", json::object()));
  s.history = ActionsFromJson(j.value("actions", json::array()));
  s.request.t = j.at("t_req").get<std::int64_t>();
  s.request.g = PointFromJson(j.at("g_req"));
  s.positives = j.value("positives", std::vector<PoiId>{});
  s.negatives = j.value("negatives", std::vector<PoiId>{});
  ValidateSft(s);
  return s;
}

std::vector<SftSample> ReadSftSamples(const std::filesystem::path& path) {
  return ReadLines<SftSample>(path, SftFromJson);
}

void WriteSftSamples(const std::vector<SftSample>& samples,
                     const std::filesystem::path& path) {
  WriteLines(samples, path, SftToJson);
}

}  // namespace stgr::data
