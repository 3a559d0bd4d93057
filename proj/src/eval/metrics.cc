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

#include "stgr/eval/metrics.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "stgr/common/error.h"

namespace stgr::eval {
namespace {

bool InTopK(const std::vector<PoiId>& predictions, PoiId target, int k) {
  const auto end = predictions.begin() +
                   std::min<std::size_t>(predictions.size(), static_cast<std::size_t>(k));
  return std::find(predictions.begin(), end, target) != end;
}

void CheckSizes(std::size_t predictions, std::size_t targets, int k) {
  if (k < 1) throw UsageError("hit rate: k must be >= 1, got " + std::to_string(k));
  if (predictions == 0) throw UsageError("hit rate: no positions");
  if (predictions != targets) {
    throw UsageError("hit rate: " + std::to_string(predictions) + " prediction lists for " +
                     std::to_string(targets) + " targets");
  }
}

void CheckLabels(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) throw UsageError("auc: scores and labels differ in size");
  for (int y : labels) {
    if (y != 0 && y != 1) throw UsageError("auc: labels must be 0 or 1");
  }
}

}  // namespace

double HitRate(const std::vector<std::vector<PoiId>>& predictions,
               const std::vector<PoiId>& targets, int k) {
  CheckSizes(predictions.size(), targets.size(), k);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    hits += InTopK(predictions[i], targets[i], k);
  }
  return static_cast<double>(hits) / static_cast<double>(targets.size());
}

double HitRateAnyOf(const std::vector<std::vector<PoiId>>& predictions,
                    const std::vector<std::vector<PoiId>>& targets, int k) {
  CheckSizes(predictions.size(), targets.size(), k);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    hits += std::any_of(targets[i].begin(), targets[i].end(),
                        [&](PoiId t) { return InTopK(predictions[i], t, k); });
  }
  return static_cast<double>(hits) / static_cast<double>(targets.size());
}

std::optional<double> Auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  CheckLabels(scores, labels);
  const std::size_t n = scores.size();
  const std::size_t n_pos = std::count(labels.begin(), labels.end(), 1);
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) return std::nullopt;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Twice the positive rank sum keeps tied averages integral.
  std::uint64_t twice_rank_sum = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const std::uint64_t twice_avg_rank = i + 1 + j;  // ranks i+1 .. j
    for (std::size_t r = i; r < j; ++r) {
      if (labels[order[r]] == 1) twice_rank_sum += twice_avg_rank;
    }
    i = j;
  }
  const std::uint64_t twice_u = twice_rank_sum - n_pos * (n_pos + 1);
  return static_cast<double>(twice_u) / (2.0 * static_cast<double>(n_pos * n_neg));
}

std::optional<double> AucPairwise(const std::vector<double>& scores,
                                  const std::vector<int>& labels) {
  CheckLabels(scores, labels);
  std::uint64_t twice_wins = 0, pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      ++pairs;
      if (scores[i] > scores[j]) {
        twice_wins += 2;
      } else if (scores[i] == scores[j]) {
        twice_wins += 1;
      }
    }
  }
  if (pairs == 0) return std::nullopt;
  return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(pairs));
}

double DiscoveryRate(const std::vector<PoiId>& recs, const std::vector<data::Action>& history,
                     int k, int m) {
  if (k < 1) throw UsageError("discovery rate: k must be >= 1");
  if (m < 0) throw UsageError("discovery rate: m must be >= 0");
  if (recs.empty()) throw UsageError("discovery rate: no recommendations");
  std::set<std::int64_t> days;
  for (const auto& a : history) days.insert(data::UtcDay(a.t));
  std::set<std::int64_t> window;
  for (auto it = days.rbegin(); it != days.rend() && static_cast<int>(window.size()) < m; ++it) {
    window.insert(*it);
  }
  std::set<PoiId> seen;
  for (const auto& a : history) {
    if (window.count(data::UtcDay(a.t))) seen.insert(a.poi);
  }
  const std::size_t n = std::min<std::size_t>(recs.size(), static_cast<std::size_t>(k));
  std::size_t fresh = 0;
  for (std::size_t i = 0; i < n; ++i) fresh += !seen.count(recs[i]);
  return static_cast<double>(fresh) / static_cast<double>(n);
}

}  // namespace stgr::eval
