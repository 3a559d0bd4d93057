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

#include "stgr/nn/mask.h"

#include <algorithm>

#include "stgr/common/error.h"

namespace stgr::nn {

AttentionMask AttentionMask::Causal(int n) {
  AttentionMask m;
  m.keys_.resize(n);
  for (int i = 0; i < n; ++i) {
    m.keys_[i].resize(i + 1);
    for (int j = 0; j <= i; ++j) m.keys_[i][j] = j;
  }
  return m;
}

AttentionMask AttentionMask::SelfOnly(int n) {
  AttentionMask m;
  m.keys_.resize(n);
  for (int i = 0; i < n; ++i) m.keys_[i] = {i};
  return m;
}

AttentionMask AttentionMask::Candidates(int prefix, int count, int width) {
  if (prefix < 0 || count < 0 || width < 1) {
    throw UsageError("candidate mask: bad layout");
  }
  AttentionMask m = Causal(prefix);
  for (int c = 0; c < count; ++c) {
    const int start = prefix + c * width;
    for (int t = 0; t < width; ++t) {
      std::vector<int> k(prefix);
      for (int j = 0; j < prefix; ++j) k[j] = j;
      for (int u = 0; u <= t; ++u) k.push_back(start + u);
      m.keys_.push_back(std::move(k));
    }
  }
  return m;
}

AttentionMask AttentionMask::FromDense(
    const std::vector<std::vector<bool>>& allowed) {
  AttentionMask m;
  const int n = static_cast<int>(allowed.size());
  m.keys_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(allowed[i].size()) != n) {
      throw UsageError("attention mask must be square");
    }
    if (!allowed[i][i]) throw UsageError("attention mask must allow self-attention");
    for (int j = 0; j < n; ++j) {
      if (allowed[i][j]) m.keys_[i].push_back(j);
    }
  }
  return m;
}

bool AttentionMask::Allowed(int i, int j) const {
  return std::binary_search(keys_[i].begin(), keys_[i].end(), j);
}

std::size_t AttentionMask::NumPairs() const {
  std::size_t n = 0;
  for (const auto& k : keys_) n += k.size();
  return n;
}

std::vector<int> CandidatePositions(int prefix, int count, int width) {
  std::vector<int> pos(prefix);
  for (int i = 0; i < prefix; ++i) pos[i] = i;
  for (int c = 0; c < count; ++c) {
    for (int t = 0; t < width; ++t) pos.push_back(prefix + t);
  }
  return pos;
}

}  // namespace stgr::nn
