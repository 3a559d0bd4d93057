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

#include "stgr/catalog/index.h"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "stgr/common/digest.h"
#include "stgr/common/error.h"

namespace stgr::catalog {

std::string_view SchemeName(IndexScheme scheme) {
  switch (scheme) {
    case IndexScheme::kGeoGrid:
      return "geo";
    case IndexScheme::kHashed:
      return "hashed";
    case IndexScheme::kSingleLevel:
      return "single";
  }
  return "geo";
}

IndexScheme ParseScheme(std::string_view name) {
  if (name == "geo") return IndexScheme::kGeoGrid;
  if (name == "hashed") return IndexScheme::kHashed;
  if (name == "single") return IndexScheme::kSingleLevel;
  throw UsageError("unknown index scheme '" + std::string(name) + "'");
}

HierarchicalIndex HierarchicalIndex::FromBuckets(
    IndexScheme scheme, const geo::BlockGrid& grid,
    std::vector<std::pair<geo::CellCoord, PoiId>> keyed) {
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].second == keyed[i - 1].second) {
      throw DataError("duplicate poi_id " + std::to_string(keyed[i].second));
    }
  }
  HierarchicalIndex index;
  index.scheme_ = scheme;
  index.grid_ = grid;
  index.code_of_.reserve(keyed.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i == 0 || keyed[i].first != keyed[i - 1].first) {
      index.block_keys_.push_back(keyed[i].first);
      index.blocks_.emplace_back();
    }
    const BlockId b = static_cast<BlockId>(index.blocks_.size() - 1);
    auto& members = index.blocks_.back();
    members.push_back(keyed[i].second);
    const PoiCode code{b, static_cast<InnerId>(members.size())};
    if (!index.code_of_.emplace(keyed[i].second, code).second) {
      // Same id in two different cells.
      throw DataError("duplicate poi_id " + std::to_string(keyed[i].second));
    }
    index.max_block_size_ =
        std::max(index.max_block_size_, static_cast<int>(members.size()));
  }
  return index;
}

HierarchicalIndex HierarchicalIndex::BuildGeo(const std::vector<Poi>& pois,
                                              const geo::BlockGrid& grid) {
  grid.Validate();
  std::vector<std::pair<geo::CellCoord, PoiId>> keyed;
  keyed.reserve(pois.size());
  for (const Poi& p : pois) keyed.emplace_back(geo::BlockCell(p.location, grid), p.poi_id);
  return FromBuckets(IndexScheme::kGeoGrid, grid, std::move(keyed));
}

HierarchicalIndex HierarchicalIndex::BuildHashed(const std::vector<Poi>& pois,
                                                 int num_buckets,
                                                 std::uint64_t seed) {
  if (num_buckets < 1) throw UsageError("hashed index: num_buckets must be >= 1");
  std::vector<std::pair<geo::CellCoord, PoiId>> keyed;
  keyed.reserve(pois.size());
  for (const Poi& p : pois) {
    std::uint64_t h = Fnv1a(&seed, sizeof(seed));
    h = Fnv1a(&p.poi_id, sizeof(p.poi_id), h);
    keyed.emplace_back(
        geo::CellCoord{static_cast<std::int64_t>(h % num_buckets), 0}, p.poi_id);
  }
  return FromBuckets(IndexScheme::kHashed, geo::BlockGrid{}, std::move(keyed));
}

HierarchicalIndex HierarchicalIndex::BuildSingleLevel(
    const std::vector<Poi>& pois) {
  std::vector<std::pair<geo::CellCoord, PoiId>> keyed;
  keyed.reserve(pois.size());
  for (const Poi& p : pois) keyed.emplace_back(geo::CellCoord{}, p.poi_id);
  return FromBuckets(IndexScheme::kSingleLevel, geo::BlockGrid{},
                     std::move(keyed));
}

PoiCode HierarchicalIndex::Encode(PoiId id) const {
  auto it = code_of_.find(id);
  if (it == code_of_.end()) {
    throw LookupError(LookupError::Kind::kUnknownPoi,
                      "poi_id " + std::to_string(id) + " is not in the index");
  }
  return it->second;
}

PoiId HierarchicalIndex::Decode(BlockId block, InnerId inner) const {
  if (block < 0 || block >= num_blocks()) {
    throw LookupError(LookupError::Kind::kBadBlock,
                      "block " + std::to_string(block) + " out of range [0, " +
                          std::to_string(num_blocks()) + ")");
  }
  const auto& members = blocks_[block];
  if (inner < 1 || inner > static_cast<InnerId>(members.size())) {
    throw LookupError(LookupError::Kind::kBadInner,
                      "inner " + std::to_string(inner) + " out of range [1, " +
                          std::to_string(members.size()) + "] for block " +
                          std::to_string(block));
  }
  return members[inner - 1];
}

int HierarchicalIndex::block_size(BlockId block) const {
  return static_cast<int>(pois_of_block(block).size());
}

const std::vector<PoiId>& HierarchicalIndex::pois_of_block(BlockId block) const {
  if (block < 0 || block >= num_blocks()) {
    throw LookupError(LookupError::Kind::kBadBlock,
                      "block " + std::to_string(block) + " out of range");
  }
  return blocks_[block];
}

const geo::CellCoord& HierarchicalIndex::block_key(BlockId block) const {
  if (block < 0 || block >= num_blocks()) {
    throw LookupError(LookupError::Kind::kBadBlock,
                      "block " + std::to_string(block) + " out of range");
  }
  return block_keys_[block];
}

void HierarchicalIndex::Serialize(std::ostream& out) const {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "scheme " << SchemeName(scheme_) << '\n';
  out << "grid " << grid_.origin.lon << ' ' << grid_.origin.lat << ' '
      << grid_.cell_km << ' ' << grid_.ref_lat << '\n';
  out << "blocks " << blocks_.size() << '\n';
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    out << "block " << b << ' ' << block_keys_[b].ix << ' ' << block_keys_[b].iy
        << ' ' << blocks_[b].size();
    for (PoiId id : blocks_[b]) out << ' ' << id;
    out << '\n';
  }
}

HierarchicalIndex HierarchicalIndex::Deserialize(std::istream& in) {
  auto fail = [](const std::string& why) -> DataError {
    return DataError("malformed index: " + why);
  };
  std::string tag, scheme;
  if (!(in >> tag >> scheme) || tag != "scheme") throw fail("missing scheme");
  geo::BlockGrid grid;
  if (!(in >> tag >> grid.origin.lon >> grid.origin.lat >> grid.cell_km >>
        grid.ref_lat) ||
      tag != "grid") {
    throw fail("missing grid");
  }
  std::size_t n = 0;
  if (!(in >> tag >> n) || tag != "blocks") throw fail("missing block count");
  std::vector<std::pair<geo::CellCoord, PoiId>> keyed;
  for (std::size_t b = 0; b < n; ++b) {
    std::size_t id = 0, k = 0;
    geo::CellCoord key;
    if (!(in >> tag >> id >> key.ix >> key.iy >> k) || tag != "block" || id != b) {
      throw fail("bad block record " + std::to_string(b));
    }
    for (std::size_t i = 0; i < k; ++i) {
      PoiId poi = 0;
      if (!(in >> poi)) throw fail("truncated block " + std::to_string(b));
      keyed.emplace_back(key, poi);
    }
  }
  return FromBuckets(ParseScheme(scheme), grid, std::move(keyed));
}

std::string HierarchicalIndex::Digest() const {
  std::ostringstream ss;
  Serialize(ss);
  return Sha1Hex(ss.str());
}

}  // namespace stgr::catalog
