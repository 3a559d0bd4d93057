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

#ifndef STGR_MODEL_CONTEXT_H_
#define STGR_MODEL_CONTEXT_H_

#include <memory>
#include <unordered_map>
#include <vector>

#include "stgr/catalog/catalog.h"
#include "stgr/catalog/index.h"
#include "stgr/catalog/vocab.h"
#include "stgr/geo/geo.h"
#include "stgr/model/config.h"

namespace stgr::model {

// Precomputed lookup rows for one POI.
struct PoiFeatures {
  catalog::PoiId poi_id = 0;
  int catalog_pos = 0;
  catalog::BlockId block = 0;
  catalog::InnerId inner = 0;
  int block_token = -1;  // -1 when the vocabulary has no block range
  int inner_token = 0;
  int category = 0;
  std::vector<int> geo_rows;  // level * table_size + bucket
};

// Immutable catalog, index, vocabulary and geo ladder shared by a model and
// its copies.
class ModelContext {
 public:
  // Builds the index named by config.index_scheme over the catalog.
  static std::shared_ptr<const ModelContext> Build(catalog::Catalog catalog,
                                                   const ModelConfig& config);
  static std::shared_ptr<const ModelContext> FromParts(catalog::Catalog catalog,
                                                       catalog::HierarchicalIndex index,
                                                       const ModelConfig& config);

  const catalog::Catalog& catalog() const { return catalog_; }
  const catalog::HierarchicalIndex& index() const { return index_; }
  const catalog::Vocabulary& vocab() const { return vocab_; }
  const geo::GeoHashSpec& geo() const { return geo_; }
  int num_action_types() const { return num_action_types_; }

  // Throws LookupError(kUnknownPoi).
  const PoiFeatures& Features(catalog::PoiId id) const;
  const std::vector<PoiFeatures>& all_features() const { return features_; }
  // POI whose vocabulary code is (block, inner token).
  catalog::PoiId PoiOf(int block, int inner_token) const;

  // level * table_size + bucket for every level.
  std::vector<int> GeoRows(const geo::GeoPoint& p) const;

 private:
  catalog::Catalog catalog_;
  catalog::HierarchicalIndex index_;
  catalog::Vocabulary vocab_;
  geo::GeoHashSpec geo_;
  int num_action_types_ = 0;
  std::vector<PoiFeatures> features_;
  std::unordered_map<catalog::PoiId, int> by_id_;
};

}  // namespace stgr::model

#endif  // STGR_MODEL_CONTEXT_H_
