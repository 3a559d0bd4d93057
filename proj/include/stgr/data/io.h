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

#ifndef STGR_DATA_IO_H_
#define STGR_DATA_IO_H_

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "stgr/data/action.h"
#include "stgr/data/sft.h"

namespace stgr::data {

// Record field names:
//   {user_id, profile{gender,age,occupation},
//    actions:[{t,gu:[lon,lat],poi,gp:[lon,lat],cat,act,it}]}
nlohmann::ordered_json ProfileToJson(const UserProfile& p);
UserProfile ProfileFromJson(const nlohmann::json& j);
nlohmann::ordered_json ActionToJson(const Action& a);
Action ActionFromJson(const nlohmann::json& j);
nlohmann::ordered_json ActionsToJson(const std::vector<Action>& actions);
std::vector<Action> ActionsFromJson(const nlohmann::json& j);
nlohmann::ordered_json PointToJson(const GeoPoint& p);
GeoPoint PointFromJson(const nlohmann::json& j);

nlohmann::ordered_json SampleToJson(const SequenceSample& s);
SequenceSample SampleFromJson(const nlohmann::json& j);

// One sequence per line. Throws DataError with file:line on bad records.
Dataset ReadDataset(const std::filesystem::path& path);
void WriteDataset(const Dataset& dataset, const std::filesystem::path& path);

// SFT / preference source records: the sequence fields plus
//   t_req, g_req:[lon,lat], positives:[poi..], negatives:[poi..]
nlohmann::ordered_json SftToJson(const SftSample& s);
SftSample SftFromJson(const nlohmann::json& j);
std::vector<SftSample> ReadSftSamples(const std::filesystem::path& path);
void WriteSftSamples(const std::vector<SftSample>& samples,
                     const std::filesystem::path& path);

}  // namespace stgr::data

#endif  // STGR_DATA_IO_H_
