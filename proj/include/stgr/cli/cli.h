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

#ifndef STGR_CLI_CLI_H_
#define STGR_CLI_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "stgr/cli/run_config.h"

namespace stgr::cli {

// Git blob hash of a file; for a directory, SHA-1 over sorted
// "<relative path> <blob hash>" lines, skipping manifest.json.
std::string ContentHash(const std::filesystem::path& path);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> options;  // flags that shape the outputs
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  // Outputs hashed by the producer, e.g. a report digest that leaves out
  // wall-clock fields.
  std::map<std::string, std::string> output_digests;
};

// Writes the manifest JSON to `path`: command, options, config digest, seed,
// input and output content hashes, and a run digest over everything except
// the outputs. Returns the run digest.
std::string WriteManifest(const std::filesystem::path& path, const RunManifest& manifest,
                          const RunConfig& config);

// Entry point of the stgr tool. Returns 0 on success, 2 for usage errors,
// 3 for data errors and 4 for numeric failures.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stgr::cli

#endif  // STGR_CLI_CLI_H_
