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

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

namespace stgr::geo {
namespace {

TEST(HaversineTest, KnownDistances) {
  EXPECT_EQ(HaversineKm({116.0, 40.0}, {116.0, 40.0}), 0.0);
  EXPECT_NEAR(HaversineKm({0, 0}, {0, 90}), 10007.54, 0.1);
  EXPECT_NEAR(HaversineKm({0, 0}, {180, 0}), 20015.09, 0.1);
}

TEST(HaversineTest, SymmetricAndTriangle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-90, 90);
  for (int i = 0; i < 1000; ++i) {
    GeoPoint a{lon(rng), lat(rng)}, b{lon(rng), lat(rng)}, c{lon(rng), lat(rng)};
    const double ab = HaversineKm(a, b);
    EXPECT_EQ(ab, HaversineKm(b, a));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, (HaversineKm(a, c) + HaversineKm(c, b)) * (1 + 1e-9) + 1e-9);
  }
}

TEST(BlockCellTest, OriginAndEastStep) {
  BlockGrid grid{{10.0, 20.0}, 5.0, 0.0};
  EXPECT_EQ(BlockCell(grid.origin, grid), (CellCoord{0, 0}));
  GeoPoint east{10.0 + 5.0 / 111.320 + 1e-12, 20.0};
  EXPECT_EQ(BlockCell(east, grid), (CellCoord{1, 0}));
  EXPECT_EQ(BlockCell(east, grid), BlockCell(east, grid));
}

TEST(BlockCellTest, TranslationIncrementsIx) {
  BlockGrid grid{{100.0, 30.0}, 5.0, 30.0};
  const double step = 5.0 / (111.320 * std::cos(30.0 * M_PI / 180.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> off(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    // Stay inside the cell so rounding never sits on a boundary.
    GeoPoint p{grid.origin.lon + (i % 17 + off(rng)) * step, 30.3};
    GeoPoint q{p.lon + step, p.lat};
    EXPECT_EQ(BlockCell(q, grid).ix, BlockCell(p, grid).ix + 1);
  }
}

TEST(BlockGridTest, ValidateRejectsBadCells) {
  EXPECT_THROW((BlockGrid{{0, 0}, 0.0, 0.0}).Validate(), std::exception);
  EXPECT_THROW((BlockGrid{{0, 0}, 5.0, 90.0}).Validate(), std::exception);
}

TEST(GridCoveringTest, OrderIndependent) {
  std::vector<GeoPoint> pts = {{1, 2}, {3, 1}, {2, 5}};
  BlockGrid a = GridCovering(pts);
  std::reverse(pts.begin(), pts.end());
  BlockGrid b = GridCovering(pts);
  EXPECT_EQ(a.origin, b.origin);
  EXPECT_EQ(a.ref_lat, b.ref_lat);
  EXPECT_EQ(a.origin, (GeoPoint{1, 1}));
}

TEST(GeoHashTest, LengthRangeAndDeterminism) {
  GeoHashSpec spec;
  spec.seed = 42;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-80, 80);
  for (int i = 0; i < 500; ++i) {
    GeoPoint p{lon(rng), lat(rng)};
    auto f = GeoHashFeatures(p, spec);
    ASSERT_EQ(f.size(), 12u);
    for (auto b : f) EXPECT_LT(b, spec.table_size);
    EXPECT_EQ(f, GeoHashFeatures(p, spec));
  }
}

TEST(GeoHashTest, SameFineCellSharesAllLevels) {
  GeoHashSpec spec;
  // Both points sit in the same 0.5 km level-0 cell.
  GeoPoint a{0.0011, 0.0011}, b{0.0012, 0.0013};
  ASSERT_EQ(LadderCells(a, spec)[0], LadderCells(b, spec)[0]);
  EXPECT_EQ(GeoHashFeatures(a, spec), GeoHashFeatures(b, spec));
}

TEST(GeoHashTest, FarPointsDifferBelowSeparation) {
  GeoHashSpec spec;
  GeoPoint a{0.0, 0.0}, b{1000.0 / 111.320, 0.0};
  auto ca = LadderCells(a, spec), cb = LadderCells(b, spec);
  auto fa = GeoHashFeatures(a, spec), fb = GeoHashFeatures(b, spec);
  for (int l = 0; l < spec.levels; ++l) {
    if (spec.CellKm(l) < 1000.0) {
      EXPECT_NE(ca[l], cb[l]) << l;
      EXPECT_NE(fa[l], fb[l]) << l;
    }
  }
}

TEST(GeoHashTest, LadderNests) {
  GeoHashSpec spec;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> lon(-10, 10), lat(-10, 10);
  for (int i = 0; i < 200; ++i) {
    auto cells = LadderCells({lon(rng), lat(rng)}, spec);
    for (int l = 1; l < spec.levels; ++l) {
      auto fdiv = [](std::int64_t a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); };
      EXPECT_EQ(cells[l].ix, fdiv(cells[l - 1].ix));
      EXPECT_EQ(cells[l].iy, fdiv(cells[l - 1].iy));
    }
  }
}

TEST(GeoHashTest, SpecValidation) {
  GeoHashSpec spec;
  spec.levels = 0;
  EXPECT_THROW(spec.Validate(), std::exception);
  spec = GeoHashSpec{};
  spec.table_size = 1;
  EXPECT_THROW(spec.Validate(), std::exception);
  spec = GeoHashSpec{};
  spec.growth = 1.0;
  EXPECT_THROW(spec.Validate(), std::exception);
}

}  // namespace
}  // namespace stgr::geo
