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

#include "stgr/catalog/catalog.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"
#include "stgr/common/error.h"

namespace stgr::catalog {

std::string CategoryKey(const std::vector<std::string>& path) {
  std::string key;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) key += '/';
    key += path[i];
  }
  return key;
}

Catalog Catalog::FromPois(std::vector<Poi> pois) {
  std::sort(pois.begin(), pois.end(),
            [](const Poi& a, const Poi& b) { return a.poi_id < b.poi_id; });
  Catalog c;
  std::set<std::string> keys;
  for (std::size_t i = 0; i < pois.size(); ++i) {
    const Poi& p = pois[i];
    if (i > 0 && pois[i - 1].poi_id == p.poi_id) {
      throw DataError("duplicate poi_id " + std::to_string(p.poi_id));
    }
    if (p.category.empty()) {
      throw DataError("poi " + std::to_string(p.poi_id) + " has no category");
    }
    if (!geo::IsValid(p.location)) {
      throw DataError("poi " + std::to_string(p.poi_id) + " has invalid location");
    }
    if (!p.mm_vector.empty()) {
      const int w = static_cast<int>(p.mm_vector.size());
      if (c.mm_dim_ != 0 && c.mm_dim_ != w) {
        throw DataError("poi " + std::to_string(p.poi_id) +
                        ": mm_vector width differs from the rest of the catalog");
      }
      c.mm_dim_ = w;
    }
    keys.insert(CategoryKey(p.category));
  }
  c.category_keys_.push_back("");
  c.category_keys_.insert(c.category_keys_.end(), keys.begin(), keys.end());
  for (std::size_t i = 0; i < c.category_keys_.size(); ++i) {
    c.category_ids_[c.category_keys_[i]] = static_cast<int>(i);
  }
  c.pois_ = std::move(pois);
  c.position_.reserve(c.pois_.size());
  for (std::size_t i = 0; i < c.pois_.size(); ++i) {
    c.position_[c.pois_[i].poi_id] = static_cast<int>(i);
  }
  return c;
}

int Catalog::IndexOf(PoiId id) const {
  auto it = position_.find(id);
  return it == position_.end() ? -1 : it->second;
}

const Poi* Catalog::Find(PoiId id) const {
  const int i = IndexOf(id);
  return i < 0 ? nullptr : &pois_[i];
}

const Poi& Catalog::Get(PoiId id) const {
  const Poi* p = Find(id);
  if (p == nullptr) {
    throw LookupError(LookupError::Kind::kUnknownPoi,
                      "unknown poi_id " + std::to_string(id));
  }
  return *p;
}

int Catalog::CategoryId(const std::vector<std::string>& path) const {
  auto it = category_ids_.find(CategoryKey(path));
  return it == category_ids_.end() || it->second == 0 ? 0 : it->second;
}

Catalog ReadCatalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open catalog " + path.string());
  std::vector<Poi> pois;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Poi p;
      p.poi_id = j.at("poi_id").get<PoiId>();
      p.location = {j.at("lon").get<double>(), j.at("lat").get<double>()};
      const auto& cat = j.at("category");
      if (cat.is_string()) {
        p.category = {cat.get<std::string>()};
      } else {
        p.category = cat.get<std::vector<std::string>>();
      }
      if (j.contains("mm_vector") && !j["mm_vector"].is_null()) {
        p.mm_vector = j["mm_vector"].get<std::vector<float>>();
      }
      pois.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return Catalog::FromPois(std::move(pois));
}

void WriteCatalog(const Catalog& catalog, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write catalog " + path.string());
  for (const Poi& p : catalog.pois()) {
    nlohmann::ordered_json j;
    j["poi_id"] = p.poi_id;
    j["lon"] = p.location.lon;
    j["lat"] = p.location.lat;
    j["category"] = p.category;
    if (!p.mm_vector.empty()) j["mm_vector"] = p.mm_vector;
    out << j.dump() << '\n';
  }
}

}  // namespace stgr::catalog
