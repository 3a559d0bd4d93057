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

#ifndef STGR_INFER_EXPORT_H_
#define STGR_INFER_EXPORT_H_

#include <filesystem>
#include <vector>

#include "stgr/data/action.h"
#include "stgr/data/sft.h"
#include "stgr/model/spacetime_gr.h"

namespace stgr::infer {

// Unit-length tower outputs. Throws NumericError on a zero vector.
std::vector<float> UserEmbedding(const model::SpacetimeGR<float>& model,
                                 const data::UserProfile& profile,
                                 const std::vector<data::Action>& history,
                                 const data::RequestContext& request);
// One row per POI, in the given order.
std::vector<std::vector<float>> PoiEmbeddings(const model::SpacetimeGR<float>& model,
                                              const std::vector<catalog::PoiId>& pois);

// {"id": user_id, "vector": [...]} per sequence with at least two actions;
// the last action supplies the request context. Returns the record count.
int ExportUserEmbeddings(const data::Dataset& dataset, const model::SpacetimeGR<float>& model,
                         const std::filesystem::path& path);
// {"id": poi_id, "vector": [...]} per catalog POI.
int ExportPoiEmbeddings(const model::SpacetimeGR<float>& model,
                        const std::filesystem::path& path);

}  // namespace stgr::infer

#endif  // STGR_INFER_EXPORT_H_
