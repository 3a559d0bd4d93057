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

#include "stgr/eval/report.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stgr/common/digest.h"
#include "stgr/common/error.h"

namespace stgr::eval {
namespace {

std::string Fixed(double v, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << v;
  return out.str();
}

nlohmann::json RowJson(const EvalRow& row, bool with_runtime) {
  nlohmann::json j;
  j["name"] = row.name;
  j["max_len"] = row.max_len;
  j["positions"] = row.positions;
  j["hr@1"] = row.hr1;
  j["hr@10"] = row.hr10;
  j["hr@100"] = row.hr100;
  j["hr@10_any_of_5"] = row.hr10_any_of;
  j["category_acc"] = row.category_acc;
  j["auc"] = row.auc ? nlohmann::json(*row.auc) : nlohmann::json(nullptr);
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& [km, d] : row.discovery) {
    grid.push_back({{"k", km.first}, {"m", km.second}, {"discovery", d}});
  }
  j["discovery"] = grid;
  if (with_runtime) j["runtime_ms"] = row.runtime_ms;
  return j;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError("cannot write " + path.string());
}

}  // namespace

std::string FormatTable(const EvalReport& report) {
  std::ostringstream out;
  out << "name|max_len|positions|hr@1|hr@10|hr@100|cat@1|auc";
  if (!report.rows.empty()) {
    for (const auto& [km, d] : report.rows[0].discovery) {
      out << "|D(" << km.first << "," << km.second << ")";
    }
  }
  out << "|runtime_ms\n";
  for (const EvalRow& row : report.rows) {
    out << row.name << '|' << row.max_len << '|' << row.positions << '|' << Fixed(row.hr1)
        << '|' << Fixed(row.hr10) << '|' << Fixed(row.hr100) << '|' << Fixed(row.category_acc)
        << '|' << (row.auc ? Fixed(*row.auc) : std::string("-"));
    for (const auto& [km, d] : row.discovery) out << '|' << Fixed(d);
    out << '|' << Fixed(row.runtime_ms, 1) << '\n';
  }
  return out.str();
}

std::string ToJsonl(const EvalReport& report) {
  std::string out;
  for (const EvalRow& row : report.rows) out += RowJson(row, true).dump() + "\n";
  return out;
}

std::string LengthSweepCsv(const EvalReport& report) {
  std::vector<const EvalRow*> sweep;
  for (const EvalRow& row : report.rows) {
    if (row.name.rfind("max_len=", 0) == 0) sweep.push_back(&row);
  }
  std::stable_sort(sweep.begin(), sweep.end(),
                   [](const EvalRow* a, const EvalRow* b) { return a->max_len < b->max_len; });
  std::ostringstream out;
  out << "max_len,hr1,hr10,hr100\n";
  for (const EvalRow* row : sweep) {
    out << row->max_len << ',' << Fixed(row->hr1, 6) << ',' << Fixed(row->hr10, 6) << ','
        << Fixed(row->hr100, 6) << '\n';
  }
  return out.str();
}

std::string DiscoveryCsv(const EvalReport& report) {
  std::ostringstream out;
  out << "name,k,m,discovery\n";
  for (const EvalRow& row : report.rows) {
    for (const auto& [km, d] : row.discovery) {
      out << '"' << row.name << "\"," << km.first << ',' << km.second << ',' << Fixed(d, 6)
          << '\n';
    }
  }
  return out.str();
}

std::string ReportDigest(const EvalReport& report) {
  std::string text;
  for (const EvalRow& row : report.rows) text += RowJson(row, false).dump() + "\n";
  return Sha1Hex(text);
}

void WriteReport(const EvalReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  WriteFile(dir / "report.txt", FormatTable(report));
  WriteFile(dir / "report.jsonl", ToJsonl(report));
  WriteFile(dir / "length_sweep.csv", LengthSweepCsv(report));
  WriteFile(dir / "discovery.csv", DiscoveryCsv(report));
}

}  // namespace stgr::eval
