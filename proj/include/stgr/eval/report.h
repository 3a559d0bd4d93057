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

#ifndef STGR_EVAL_REPORT_H_
#define STGR_EVAL_REPORT_H_

#include <filesystem>
#include <string>

#include "stgr/eval/ablation.h"

namespace stgr::eval {

// '|'-delimited table with a header row.
std::string FormatTable(const EvalReport& report);

// One JSON object per row.
std::string ToJsonl(const EvalReport& report);

// max_len,hr1,hr10,hr100 for the rows named "max_len=N", ascending.
std::string LengthSweepCsv(const EvalReport& report);

// name,k,m,discovery for every row and grid cell.
std::string DiscoveryCsv(const EvalReport& report);

// SHA-1 over every metric except the wall-clock runtime.
std::string ReportDigest(const EvalReport& report);

// Writes report.txt, report.jsonl, length_sweep.csv and discovery.csv
// under `dir`. Throws DataError when a file cannot be written.
void WriteReport(const EvalReport& report, const std::filesystem::path& dir);

}  // namespace stgr::eval

#endif  // STGR_EVAL_REPORT_H_
