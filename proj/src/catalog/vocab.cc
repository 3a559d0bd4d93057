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

#include "stgr/catalog/vocab.h"

#include "stgr/common/error.h"

namespace stgr::catalog {

Vocabulary Vocabulary::Build(const HierarchicalIndex& index,
                             int num_action_types, int num_profile_tokens) {
  if (num_action_types < 0 || num_profile_tokens < 0) {
    throw UsageError("vocabulary: negative range size");
  }
  Vocabulary v;
  if (index.scheme() == IndexScheme::kSingleLevel) {
    v.num_blocks_ = 0;
    v.num_inner_ = index.num_pois();
  } else {
    v.num_blocks_ = index.num_blocks();
    v.num_inner_ = index.max_block_size();
  }
  v.num_actions_ = num_action_types;
  v.num_profile_ = num_profile_tokens;
  return v;
}

int Vocabulary::BlockToken(BlockId block) const {
  if (block < 0 || block >= num_blocks_) {
    throw LookupError(LookupError::Kind::kBadBlock,
                      "no token for block " + std::to_string(block));
  }
  return block_begin() + block;
}

int Vocabulary::InnerToken(InnerId inner) const {
  if (inner < 1 || inner > num_inner_) {
    throw LookupError(LookupError::Kind::kBadInner,
                      "no token for inner " + std::to_string(inner));
  }
  return inner_begin() + inner - 1;
}

int Vocabulary::ActionToken(int action) const {
  if (action < 0 || action >= num_actions_) {
    throw DataError("no token for action type " + std::to_string(action));
  }
  return action_begin() + action;
}

int Vocabulary::ProfileToken(int profile_row) const {
  if (profile_row < 0 || profile_row >= num_profile_) {
    throw DataError("no token for profile row " + std::to_string(profile_row));
  }
  return profile_begin() + profile_row;
}

Vocabulary::Range Vocabulary::RangeOf(int token) const {
  if (token < 0 || token >= size()) {
    throw DataError("token " + std::to_string(token) + " outside vocabulary");
  }
  if (token < inner_begin()) return Range::kBlock;
  if (token < action_begin()) return Range::kInner;
  if (token < profile_begin()) return Range::kAction;
  if (token < pad_token()) return Range::kProfile;
  return Range::kSpecial;
}

std::string Vocabulary::Describe() const {
  return "blocks=" + std::to_string(num_blocks_) +
         " inner=" + std::to_string(num_inner_) +
         " actions=" + std::to_string(num_actions_) +
         " profile=" + std::to_string(num_profile_) +
         " size=" + std::to_string(size());
}

}  // namespace stgr::catalog
