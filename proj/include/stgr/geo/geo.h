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

#ifndef STGR_GEO_GEO_H_
#define STGR_GEO_GEO_H_

#include <compare>
#include <cstdint>
#include <vector>

namespace stgr::geo {

inline constexpr double kEarthRadiusKm = 6371.0;
// Equirectangular scale factors.
inline constexpr double kKmPerDegreeLon = 111.320;  // times cos(ref_lat)
inline constexpr double kKmPerDegreeLat = 110.574;

struct GeoPoint {
  double lon = 0.0;  // degrees east, [-180, 180]
  double lat = 0.0;  // degrees north, [-90, 90]

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool IsValid(const GeoPoint& p);

// Clamps lon to [-180, 180] and lat to [-90, 90].
GeoPoint Clamp(const GeoPoint& p);

// Great-circle distance on a sphere of radius kEarthRadiusKm.
double HaversineKm(const GeoPoint& a, const GeoPoint& b);

struct CellCoord {
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  friend auto operator<=>(const CellCoord&, const CellCoord&) = default;
};

// Equirectangular grid of square cells anchored at `origin`.
struct BlockGrid {
  GeoPoint origin;
  double cell_km = 5.0;
  double ref_lat = 0.0;

  // Throws UsageError when cell_km <= 0 or cos(ref_lat) <= 0.
  void Validate() const;
};

CellCoord BlockCell(const GeoPoint& p, const BlockGrid& grid);

// Geographic center of a grid cell.
GeoPoint CellCenter(const CellCoord& cell, const BlockGrid& grid);

// Grid covering a set of points: origin at the south-west corner of their
// bounding box, ref_lat at the box's mid latitude. Independent of point order.
BlockGrid GridCovering(const std::vector<GeoPoint>& points,
                       double cell_km = 5.0);

// Multi-resolution hashing ladder: level l uses square cells of
// base_cell_km * growth^l and hashes the cell into [0, table_size).
struct GeoHashSpec {
  int levels = 12;
  double base_cell_km = 0.5;
  double growth = 2.0;
  std::uint32_t table_size = 65536;
  std::uint64_t seed = 0;
  // Latitude fixing the km-per-degree-longitude scale of every level.
  double ref_lat = 0.0;

  void Validate() const;
  double CellKm(int level) const;
};

// Cell of `p` at every level of the ladder. Coarser cells nest exactly inside
// finer ones when `growth` is an integer.
std::vector<CellCoord> LadderCells(const GeoPoint& p, const GeoHashSpec& spec);

// FNV-1a over (seed, level, ix, iy) little-endian bytes, mod table_size.
std::uint32_t HashCell(const GeoHashSpec& spec, int level,
                       const CellCoord& cell);

// One bucket id per level.
std::vector<std::uint32_t> GeoHashFeatures(const GeoPoint& p,
                                           const GeoHashSpec& spec);

}  // namespace stgr::geo

#endif  // STGR_GEO_GEO_H_
