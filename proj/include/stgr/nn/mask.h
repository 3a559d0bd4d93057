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

#ifndef STGR_NN_MASK_H_
#define STGR_NN_MASK_H_

#include <cstdint>
#include <vector>

namespace stgr::nn {

// allowed(i, j): token i may attend to token j. Stored as sorted key lists
// per query; every query attends to itself.
class AttentionMask {
 public:
  AttentionMask() = default;

  static AttentionMask Causal(int n);
  static AttentionMask SelfOnly(int n);
  // Causal prefix of length `prefix`, followed by `count` groups of `width`
  // tokens. A group's tokens see the whole prefix plus the earlier tokens of
  // their own group, nothing from other groups.
  static AttentionMask Candidates(int prefix, int count, int width);
  // Throws UsageError when a diagonal entry is false.
  static AttentionMask FromDense(const std::vector<std::vector<bool>>& allowed);

  int size() const { return static_cast<int>(keys_.size()); }
  const std::vector<int>& keys(int i) const { return keys_[i]; }
  bool Allowed(int i, int j) const;
  std::size_t NumPairs() const;

 private:
  std::vector<std::vector<int>> keys_;
};

// Position ids for a candidate layout: 0..prefix-1, then every group
// restarts at prefix.
std::vector<int> CandidatePositions(int prefix, int count, int width);

}  // namespace stgr::nn

#endif  // STGR_NN_MASK_H_
