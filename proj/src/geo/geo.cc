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

#include "stgr/geo/geo.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stgr/common/digest.h"
#include "stgr/common/error.h"

namespace stgr::geo {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::int64_t FloorDiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void PutLe(unsigned char* out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

}  // namespace

bool IsValid(const GeoPoint& p) {
  return std::isfinite(p.lon) && std::isfinite(p.lat) && p.lon >= -180.0 &&
         p.lon <= 180.0 && p.lat >= -90.0 && p.lat <= 90.0;
}

GeoPoint Clamp(const GeoPoint& p) {
  return {std::clamp(p.lon, -180.0, 180.0), std::clamp(p.lat, -90.0, 90.0)};
}

double HaversineKm(const GeoPoint& a, const GeoPoint& b) {
  const double lat1 = a.lat * kDegToRad;
  const double lat2 = b.lat * kDegToRad;
  const double dlat = lat2 - lat1;
  const double dlon = (b.lon - a.lon) * kDegToRad;
  const double s = std::sin(dlat / 2.0);
  const double t = std::sin(dlon / 2.0);
  double h = s * s + std::cos(lat1) * std::cos(lat2) * t * t;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

void BlockGrid::Validate() const {
  if (!(cell_km > 0.0)) throw UsageError("block grid: cell_km must be > 0");
  if (!(std::abs(ref_lat) < 90.0)) {
    throw UsageError("block grid: |ref_lat| must be < 90 so cos(ref_lat) > 0");
  }
}

CellCoord BlockCell(const GeoPoint& p, const BlockGrid& grid) {
  const double kx = kKmPerDegreeLon * std::cos(grid.ref_lat * kDegToRad);
  const double x = (p.lon - grid.origin.lon) * kx / grid.cell_km;
  const double y = (p.lat - grid.origin.lat) * kKmPerDegreeLat / grid.cell_km;
  return {static_cast<std::int64_t>(std::floor(x)),
          static_cast<std::int64_t>(std::floor(y))};
}

GeoPoint CellCenter(const CellCoord& cell, const BlockGrid& grid) {
  const double kx = kKmPerDegreeLon * std::cos(grid.ref_lat * kDegToRad);
  return Clamp({grid.origin.lon + (cell.ix + 0.5) * grid.cell_km / kx,
                grid.origin.lat + (cell.iy + 0.5) * grid.cell_km / kKmPerDegreeLat});
}

BlockGrid GridCovering(const std::vector<GeoPoint>& points, double cell_km) {
  BlockGrid grid;
  grid.cell_km = cell_km;
  if (points.empty()) return grid;
  double min_lon = points[0].lon, min_lat = points[0].lat;
  double max_lat = points[0].lat;
  for (const auto& p : points) {
    min_lon = std::min(min_lon, p.lon);
    min_lat = std::min(min_lat, p.lat);
    max_lat = std::max(max_lat, p.lat);
  }
  grid.origin = {min_lon, min_lat};
  grid.ref_lat = 0.5 * (min_lat + max_lat);
  return grid;
}

void GeoHashSpec::Validate() const {
  if (levels < 1) throw UsageError("geo hash: levels must be >= 1");
  if (table_size < 2) throw UsageError("geo hash: table_size must be >= 2");
  if (!(base_cell_km > 0.0)) throw UsageError("geo hash: base_cell_km must be > 0");
  if (!(growth > 1.0)) {
    throw UsageError("geo hash: growth must be > 1 so cell sizes increase");
  }
  if (!(std::abs(ref_lat) < 90.0)) {
    throw UsageError("geo hash: |ref_lat| must be < 90 so cos(ref_lat) > 0");
  }
}

double GeoHashSpec::CellKm(int level) const {
  return base_cell_km * std::pow(growth, level);
}

std::vector<CellCoord> LadderCells(const GeoPoint& p, const GeoHashSpec& spec) {
  std::vector<CellCoord> cells(spec.levels);
  const double kx = kKmPerDegreeLon * std::cos(spec.ref_lat * kDegToRad);
  const double x_km = p.lon * kx;
  const double y_km = p.lat * kKmPerDegreeLat;
  const double g = std::round(spec.growth);
  const bool integral = std::abs(spec.growth - g) < 1e-12 && g >= 2.0;
  for (int l = 0; l < spec.levels; ++l) {
    if (l > 0 && integral) {
      const auto f = static_cast<std::int64_t>(g);
      cells[l] = {FloorDiv(cells[l - 1].ix, f), FloorDiv(cells[l - 1].iy, f)};
    } else {
      const double c = spec.CellKm(l);
      cells[l] = {static_cast<std::int64_t>(std::floor(x_km / c)),
                  static_cast<std::int64_t>(std::floor(y_km / c))};
    }
  }
  return cells;
}

std::uint32_t HashCell(const GeoHashSpec& spec, int level,
                       const CellCoord& cell) {
  unsigned char buf[28];
  PutLe(buf, spec.seed, 8);
  PutLe(buf + 8, static_cast<std::uint32_t>(level), 4);
  PutLe(buf + 12, static_cast<std::uint64_t>(cell.ix), 8);
  PutLe(buf + 20, static_cast<std::uint64_t>(cell.iy), 8);
  return static_cast<std::uint32_t>(Fnv1a(buf, sizeof(buf)) % spec.table_size);
}

std::vector<std::uint32_t> GeoHashFeatures(const GeoPoint& p,
                                           const GeoHashSpec& spec) {
  const auto cells = LadderCells(p, spec);
  std::vector<std::uint32_t> out(cells.size());
  for (int l = 0; l < spec.levels; ++l) out[l] = HashCell(spec, l, cells[l]);
  return out;
}

}  // namespace stgr::geo
