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

#ifndef STGR_CATALOG_INDEX_H_
#define STGR_CATALOG_INDEX_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "stgr/catalog/catalog.h"
#include "stgr/geo/geo.h"

namespace stgr::catalog {

using BlockId = std::int32_t;  // dense, 0-based
using InnerId = std::int32_t;  // 1-based within a block

struct PoiCode {
  BlockId block = 0;
  InnerId inner = 0;

  friend bool operator==(const PoiCode&, const PoiCode&) = default;
};

enum class IndexScheme {
  kGeoGrid,      // block = non-empty grid cell
  kHashed,       // block = hash(poi_id) bucket (flat-hash ablation)
  kSingleLevel,  // one block holding every POI (check-in mode)
};

std::string_view SchemeName(IndexScheme scheme);
IndexScheme ParseScheme(std::string_view name);

// Bijection poi_id <-> (block, inner). Blocks with no POIs get no id.
class HierarchicalIndex {
 public:
  HierarchicalIndex() = default;

  // Blocks are the non-empty cells of `grid`, enumerated in lexicographic
  // (ix, iy) order; inner ids 1..K follow ascending poi_id.
  // Throws DataError naming a duplicate poi_id.
  static HierarchicalIndex BuildGeo(const std::vector<Poi>& pois,
                                    const geo::BlockGrid& grid);

  // Blocks are non-empty buckets of FNV-1a(seed, poi_id) mod num_buckets,
  // enumerated by bucket number.
  static HierarchicalIndex BuildHashed(const std::vector<Poi>& pois,
                                       int num_buckets, std::uint64_t seed);

  static HierarchicalIndex BuildSingleLevel(const std::vector<Poi>& pois);

  // Throws LookupError(kUnknownPoi).
  PoiCode Encode(PoiId id) const;
  bool Contains(PoiId id) const { return code_of_.count(id) != 0; }
  // Throws LookupError(kBadBlock) or LookupError(kBadInner).
  PoiId Decode(BlockId block, InnerId inner) const;
  PoiId Decode(const PoiCode& code) const {
    return Decode(code.block, code.inner);
  }

  IndexScheme scheme() const { return scheme_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int num_pois() const { return static_cast<int>(code_of_.size()); }
  int block_size(BlockId block) const;
  int max_block_size() const { return max_block_size_; }
  const std::vector<PoiId>& pois_of_block(BlockId block) const;
  // Grid cell (kGeoGrid) or bucket number in ix (kHashed) of a block.
  const geo::CellCoord& block_key(BlockId block) const;
  const geo::BlockGrid& grid() const { return grid_; }

  // SHA-1 of the canonical serialization.
  std::string Digest() const;

  // Canonical text form, one record per line.
  void Serialize(std::ostream& out) const;
  static HierarchicalIndex Deserialize(std::istream& in);

 private:
  static HierarchicalIndex FromBuckets(
      IndexScheme scheme, const geo::BlockGrid& grid,
      std::vector<std::pair<geo::CellCoord, PoiId>> keyed);

  IndexScheme scheme_ = IndexScheme::kGeoGrid;
  geo::BlockGrid grid_;
  std::vector<geo::CellCoord> block_keys_;
  std::vector<std::vector<PoiId>> blocks_;
  std::unordered_map<PoiId, PoiCode> code_of_;
  int max_block_size_ = 0;
};

}  // namespace stgr::catalog

#endif  // STGR_CATALOG_INDEX_H_
