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

#ifndef STGR_MODEL_CHECKPOINT_H_
#define STGR_MODEL_CHECKPOINT_H_

#include <filesystem>
#include <map>
#include <string>

#include "stgr/model/spacetime_gr.h"

namespace stgr::model {

// Checkpoint directory:
//   manifest.txt   config keys, vocabulary layout, index digest, parameter list
//   index.txt      serialized hierarchical index
//   catalog.jsonl  POI catalog
//   <name>.bin     int32 rank, int32 dims, then little-endian float32 values
// The directory is written beside the target and renamed into place.
void SaveCheckpoint(const SpacetimeGR<float>& model, const std::filesystem::path& dir,
                    const std::map<std::string, std::string>& meta = {});

struct LoadedCheckpoint {
  SpacetimeGR<float> model;
  std::map<std::string, std::string> meta;
};

// Throws DataError on a missing file, a digest mismatch or a malformed
// tensor.
LoadedCheckpoint LoadCheckpoint(const std::filesystem::path& dir);

// Raw tensor files.
void WriteTensor(const nn::Matrix<float>& m, const std::filesystem::path& path);
nn::Matrix<float> ReadTensor(const std::filesystem::path& path);

}  // namespace stgr::model

#endif  // STGR_MODEL_CHECKPOINT_H_
