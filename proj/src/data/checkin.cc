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

#include "stgr/data/checkin.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "stgr/common/error.h"

namespace stgr::data {
namespace {

std::vector<std::string> Split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, delim)) out.push_back(field);
  if (!line.empty() && line.back() == delim) out.emplace_back();
  return out;
}

std::string Trim(std::string s) {
  const char* ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

bool ParseDouble(const std::string& s, double* v) {
  if (s.empty()) return false;
  char* end = nullptr;
  *v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

int MonthOf(const char* name) {
  static const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                  "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  for (int m = 0; m < 12; ++m) {
    if (std::strncmp(name, kMonths[m], 3) == 0) return m + 1;
  }
  return 0;
}

bool ValidCalendar(int y, int mo, int d, int h, int mi, int s) {
  return y >= 1970 && mo >= 1 && mo <= 12 && d >= 1 && d <= 31 && h >= 0 &&
         h < 24 && mi >= 0 && mi < 60 && s >= 0 && s < 61;
}

}  // namespace

bool ParseCheckinTime(const std::string& raw, std::int64_t* t_ms) {
  const std::string text = Trim(raw);
  if (text.empty()) return false;
  if (std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) return false;
    if (text.size() == 10) v *= 1000;
    else if (text.size() != 13) return false;
    *t_ms = v;
    return HasThirteenDigits(v);
  }
  int y, mo, d, h, mi, s;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s,
                  &tail) >= 6 ||
      std::sscanf(text.c_str(), "%4d-%2d-%2d %2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s,
                  &tail) >= 6) {
    if (tail != 0 && tail != 'Z') return false;
    if (!ValidCalendar(y, mo, d, h, mi, s)) return false;
    *t_ms = MakeTimestamp(y, mo, d, h, mi, s);
    return HasThirteenDigits(*t_ms);
  }
  char wday[4] = {0}, mon[4] = {0};
  int offset = 0;
  if (std::sscanf(text.c_str(), "%3s %3s %d %d:%d:%d %d %d", wday, mon, &d, &h, &mi, &s,
                  &offset, &y) == 8) {
    mo = MonthOf(mon);
    if (!ValidCalendar(y, mo, d, h, mi, s)) return false;
    const int sign = offset < 0 ? -1 : 1;
    const int off_min = sign * ((std::abs(offset) / 100) * 60 + std::abs(offset) % 100);
    *t_ms = MakeTimestamp(y, mo, d, h, mi, s) - off_min * 60000LL;
    return HasThirteenDigits(*t_ms);
  }
  return false;
}

CheckinResult IngestCheckins(const std::string& path, const CheckinSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open check-in file " + path);
  struct Row {
    std::string user;
    std::string poi;
    GeoPoint loc;
    std::string category;
    std::int64_t t;
    std::int64_t line;
  };
  const int needed = std::max({schema.user, schema.poi, schema.lat, schema.lon,
                               schema.category, schema.timestamp}) + 1;
  std::vector<Row> rows;
  CheckinResult result;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (schema.header && line_no == 1) continue;
    if (Trim(line).empty()) continue;
    ++result.rows;
    const auto f = Split(line, schema.delimiter);
    Row r;
    r.line = line_no;
    bool ok = static_cast<int>(f.size()) >= needed;
    if (ok) {
      r.user = Trim(f[schema.user]);
      r.poi = Trim(f[schema.poi]);
      r.category = Trim(f[schema.category]);
      ok = !r.user.empty() && !r.poi.empty() && !r.category.empty() &&
           ParseDouble(Trim(f[schema.lat]), &r.loc.lat) &&
           ParseDouble(Trim(f[schema.lon]), &r.loc.lon) && geo::IsValid(r.loc) &&
           ParseCheckinTime(f[schema.timestamp], &r.t);
    }
    if (!ok) {
      ++result.warnings;
      std::fprintf(stderr, "warning: %s:%lld: malformed check-in row skipped\n",
                   path.c_str(), static_cast<long long>(line_no));
      continue;
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw DataError("no valid check-in rows in " + path);

  // POI ids follow the sorted external keys; the first row fixes location
  // and category.
  std::map<std::string, const Row*> first_row;
  for (const Row& r : rows) first_row.try_emplace(r.poi, &r);
  std::map<std::string, PoiId> poi_ids;
  std::vector<catalog::Poi> pois;
  for (const auto& [key, r] : first_row) {
    const PoiId id = static_cast<PoiId>(pois.size()) + 1;
    poi_ids[key] = id;
    result.poi_keys.push_back(key);
    pois.push_back({id, r->loc, {r->category}, {}});
  }
  result.catalog = catalog::Catalog::FromPois(pois);

  std::map<std::string, std::vector<const Row*>> by_user;
  for (const Row& r : rows) by_user[r.user].push_back(&r);
  for (auto& [user, list] : by_user) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Row* a, const Row* b) { return a->t < b->t; });
    SequenceSample seq;
    seq.user_id = user;
    for (const Row* r : list) {
      const catalog::Poi& p = result.catalog.Get(poi_ids[r->poi]);
      Action a;
      a.t = r->t;
      a.g_p = p.location;
      a.g_u = p.location;
      a.poi = p.poi_id;
      a.category = p.category;
      a.action_type = ActionType::kClick;
      a.interest = 1;
      seq.actions.push_back(std::move(a));
    }
    result.dataset.push_back(std::move(seq));
  }
  return result;
}

}  // namespace stgr::data
