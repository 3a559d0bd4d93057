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

#ifndef STGR_CATALOG_CATALOG_H_
#define STGR_CATALOG_CATALOG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "stgr/geo/geo.h"

namespace stgr::catalog {

using PoiId = std::int64_t;

struct Poi {
  PoiId poi_id = 0;
  geo::GeoPoint location;
  // Ordered path, coarse to fine, e.g. {"food", "French food"}.
  std::vector<std::string> category;
  // Optional precomputed multimodal vector; empty when absent.
  std::vector<float> mm_vector;
};

// Joins a category path with '/'.
std::string CategoryKey(const std::vector<std::string>& path);

// Immutable POI table, kept sorted by poi_id, with a dense category
// vocabulary (id 0 is reserved for unknown paths).
class Catalog {
 public:
  Catalog() = default;

  // Throws DataError on a duplicate poi_id (naming it), an empty category,
  // an invalid location, or mm vectors of differing widths.
  static Catalog FromPois(std::vector<Poi> pois);

  const std::vector<Poi>& pois() const { return pois_; }
  std::size_t size() const { return pois_.size(); }

  // Position in pois(), or -1.
  int IndexOf(PoiId id) const;
  const Poi* Find(PoiId id) const;
  // Throws LookupError(kUnknownPoi).
  const Poi& Get(PoiId id) const;

  // Dense id of a category path; 0 when the path is not in the catalog.
  int CategoryId(const std::vector<std::string>& path) const;
  int num_categories() const {
    return static_cast<int>(category_keys_.size());
  }
  // Index 0 is the empty "unknown" key.
  const std::vector<std::string>& category_keys() const {
    return category_keys_;
  }

  // Width of the multimodal vectors; 0 when no POI carries one.
  int mm_dim() const { return mm_dim_; }

 private:
  std::vector<Poi> pois_;
  std::unordered_map<PoiId, int> position_;
  std::vector<std::string> category_keys_;
  std::unordered_map<std::string, int> category_ids_;
  int mm_dim_ = 0;
};

// Line-delimited catalog records:
//   {"poi_id":..,"lon":..,"lat":..,"category":[..],"mm_vector":[..]}
// mm_vector is optional.
Catalog ReadCatalog(const std::filesystem::path& path);
void WriteCatalog(const Catalog& catalog, const std::filesystem::path& path);

}  // namespace stgr::catalog

#endif  // STGR_CATALOG_CATALOG_H_
