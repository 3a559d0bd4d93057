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

#ifndef STGR_CATALOG_VOCAB_H_
#define STGR_CATALOG_VOCAB_H_

#include <string>

#include "stgr/catalog/index.h"

namespace stgr::catalog {

// Output token layout, contiguous and disjoint:
//   [blocks: NB][inners: K_max][action types][profile tokens][pad][begin]
// Inner token j means "j-th POI of the block that precedes it". In a
// single-level index the block range is empty and the inner range covers
// every POI.
class Vocabulary {
 public:
  enum class Range { kBlock, kInner, kAction, kProfile, kSpecial };

  Vocabulary() = default;
  static Vocabulary Build(const HierarchicalIndex& index, int num_action_types,
                          int num_profile_tokens);

  int size() const { return pad_token() + 2; }
  int num_blocks() const { return num_blocks_; }
  int num_inner() const { return num_inner_; }
  int num_action_types() const { return num_actions_; }
  int num_profile_tokens() const { return num_profile_; }

  int block_begin() const { return 0; }
  int inner_begin() const { return num_blocks_; }
  int action_begin() const { return inner_begin() + num_inner_; }
  int profile_begin() const { return action_begin() + num_actions_; }
  int pad_token() const { return profile_begin() + num_profile_; }
  int begin_token() const { return pad_token() + 1; }

  int BlockToken(BlockId block) const;
  int InnerToken(InnerId inner) const;
  int ActionToken(int action) const;
  int ProfileToken(int profile_row) const;

  Range RangeOf(int token) const;

  // "blocks=.. inner=.. actions=.. profile=.." for manifests.
  std::string Describe() const;

 private:
  int num_blocks_ = 0;
  int num_inner_ = 0;
  int num_actions_ = 0;
  int num_profile_ = 0;
};

}  // namespace stgr::catalog

#endif  // STGR_CATALOG_VOCAB_H_
