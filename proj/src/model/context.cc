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

#include "stgr/model/context.h"

#include "stgr/common/error.h"
#include "stgr/data/action.h"

namespace stgr::model {

std::shared_ptr<const ModelContext> ModelContext::Build(catalog::Catalog catalog,
                                                        const ModelConfig& config) {
  const auto& pois = catalog.pois();
  if (pois.empty()) throw DataError("cannot build a model over an empty catalog");
  std::vector<geo::GeoPoint> pts;
  for (const auto& p : pois) pts.push_back(p.location);
  const geo::BlockGrid grid = geo::GridCovering(pts, config.block_cell_km);
  catalog::HierarchicalIndex index;
  switch (config.index_scheme) {
    case catalog::IndexScheme::kGeoGrid:
      index = catalog::HierarchicalIndex::BuildGeo(pois, grid);
      break;
    case catalog::IndexScheme::kHashed: {
      int buckets = config.hashed_buckets;
      if (buckets == 0) buckets = catalog::HierarchicalIndex::BuildGeo(pois, grid).num_blocks();
      index = catalog::HierarchicalIndex::BuildHashed(pois, buckets, config.geo_seed);
      break;
    }
    case catalog::IndexScheme::kSingleLevel:
      index = catalog::HierarchicalIndex::BuildSingleLevel(pois);
      break;
  }
  return FromParts(std::move(catalog), std::move(index), config);
}

std::shared_ptr<const ModelContext> ModelContext::FromParts(
    catalog::Catalog catalog, catalog::HierarchicalIndex index, const ModelConfig& config) {
  config.Validate();
  if (index.scheme() != config.index_scheme) {
    throw DataError("index scheme does not match the model config");
  }
  auto ctx = std::shared_ptr<ModelContext>(new ModelContext());
  ctx->num_action_types_ = config.mode == Mode::kOnline ? data::kNumActionTypes : 1;
  ctx->vocab_ = catalog::Vocabulary::Build(index, ctx->num_action_types_,
                                           data::kNumProfileTokens);
  // The hash ladder shares the latitude scale of the catalog's extent.
  std::vector<geo::GeoPoint> pts;
  for (const auto& p : catalog.pois()) pts.push_back(p.location);
  ctx->geo_.levels = config.geo_levels;
  ctx->geo_.base_cell_km = config.geo_base_cell_km;
  ctx->geo_.growth = config.geo_growth;
  ctx->geo_.table_size = config.geo_table_size;
  ctx->geo_.seed = config.geo_seed;
  ctx->geo_.ref_lat = geo::GridCovering(pts).ref_lat;
  ctx->geo_.Validate();
  for (std::size_t i = 0; i < catalog.pois().size(); ++i) {
    const catalog::Poi& p = catalog.pois()[i];
    if (!index.Contains(p.poi_id)) {
      throw DataError("poi " + std::to_string(p.poi_id) + " missing from the index");
    }
    PoiFeatures f;
    f.poi_id = p.poi_id;
    f.catalog_pos = static_cast<int>(i);
    const catalog::PoiCode code = index.Encode(p.poi_id);
    f.block = code.block;
    f.inner = code.inner;
    f.block_token = ctx->vocab_.num_blocks() > 0 ? ctx->vocab_.BlockToken(code.block) : -1;
    f.inner_token = ctx->vocab_.InnerToken(code.inner);
    f.category = catalog.CategoryId(p.category);
    f.geo_rows = ctx->GeoRows(p.location);
    ctx->by_id_[p.poi_id] = static_cast<int>(ctx->features_.size());
    ctx->features_.push_back(std::move(f));
  }
  if (index.num_pois() != static_cast<int>(catalog.size())) {
    throw DataError("index and catalog hold different POI sets");
  }
  ctx->catalog_ = std::move(catalog);
  ctx->index_ = std::move(index);
  return ctx;
}

const PoiFeatures& ModelContext::Features(catalog::PoiId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) {
    throw LookupError(LookupError::Kind::kUnknownPoi,
                      "unknown poi_id " + std::to_string(id));
  }
  return features_[it->second];
}

catalog::PoiId ModelContext::PoiOf(int block, int inner_token) const {
  return index_.Decode(block, inner_token - vocab_.inner_begin() + 1);
}

std::vector<int> ModelContext::GeoRows(const geo::GeoPoint& p) const {
  const auto buckets = geo::GeoHashFeatures(p, geo_);
  std::vector<int> rows(buckets.size());
  for (std::size_t l = 0; l < buckets.size(); ++l) {
    rows[l] = static_cast<int>(l * geo_.table_size + buckets[l]);
  }
  return rows;
}

}  // namespace stgr::model
