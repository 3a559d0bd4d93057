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

#include "stgr/eval/evaluate.h"

#include <chrono>

#include "stgr/common/error.h"
#include "stgr/common/parallel.h"
#include "stgr/data/synth.h"
#include "stgr/eval/metrics.h"
#include "stgr/infer/decode.h"

namespace stgr::eval {
namespace {

EvalPosition PositionAt(const data::SequenceSample& seq, std::size_t i) {
  const data::Action& a = seq.actions[i];
  EvalPosition p;
  p.profile = seq.profile;
  p.history.assign(seq.actions.begin(), seq.actions.begin() + i);
  p.request = {a.t, a.g_u};
  p.target = a.poi;
  p.target_top_level = data::TopLevel(a.category);
  return p;
}

}  // namespace

std::vector<EvalPosition> MakePositions(const data::Dataset& dataset, PositionPolicy policy) {
  std::vector<EvalPosition> out;
  for (const auto& seq : dataset) {
    const std::size_t n = seq.actions.size();
    if (n < 2) continue;
    const std::size_t first = policy == PositionPolicy::kEveryAction ? 1 : n - 1;
    for (std::size_t i = first; i < n; ++i) {
      if (seq.actions[i].interest == 1) out.push_back(PositionAt(seq, i));
    }
  }
  return out;
}

std::vector<EvalPosition> MakeAnyOfPositions(const data::Dataset& dataset, int n) {
  if (n < 1) throw UsageError("any-of positions: n must be >= 1");
  std::vector<EvalPosition> out;
  for (const auto& seq : dataset) {
    const std::size_t len = seq.actions.size();
    if (len <= static_cast<std::size_t>(n)) continue;
    const std::size_t first = len - n;
    EvalPosition p = PositionAt(seq, first);
    for (std::size_t i = first; i < len; ++i) p.any_of.push_back(seq.actions[i].poi);
    out.push_back(std::move(p));
  }
  return out;
}

EvalRow Evaluate(const model::SpacetimeGR<float>& model,
                 const std::vector<EvalPosition>& positions, const EvalOptions& options) {
  if (positions.empty()) throw UsageError("evaluate: no positions");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = positions.size();
  std::vector<std::vector<PoiId>> predictions(n);
  ParallelFor(n, [&](std::size_t i) {
    const EvalPosition& p = positions[i];
    infer::RecommendRequest req;
    req.profile = p.profile;
    req.actions = p.history;
    req.t_req = p.request.t;
    req.g_req = p.request.g;
    req.k = 100;
    req.w_block = options.w_block;
    req.w_inner = options.w_inner;
    for (const auto& item : infer::BeamDecode(req, model).items) {
      predictions[i].push_back(item.poi_id);
    }
  });

  EvalRow row;
  row.max_len = model.config().max_len;
  row.positions = static_cast<int>(n);
  std::vector<PoiId> targets;
  std::vector<std::vector<PoiId>> any_pred, any_targets;
  const catalog::Catalog& catalog = model.context().catalog();
  std::size_t category_hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    targets.push_back(positions[i].target);
    if (!positions[i].any_of.empty()) {
      any_pred.push_back(predictions[i]);
      any_targets.push_back(positions[i].any_of);
    }
    if (!predictions[i].empty() &&
        data::TopLevel(catalog.Get(predictions[i][0]).category) ==
            positions[i].target_top_level) {
      ++category_hits;
    }
  }
  row.hr1 = HitRate(predictions, targets, 1);
  row.hr10 = HitRate(predictions, targets, 10);
  row.hr100 = HitRate(predictions, targets, 100);
  if (!any_pred.empty()) row.hr10_any_of = HitRateAnyOf(any_pred, any_targets, 10);
  row.category_acc = static_cast<double>(category_hits) / static_cast<double>(n);
  for (int k : options.discovery_k) {
    for (int m : options.discovery_m) {
      double sum = 0.0;
      std::size_t counted = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (predictions[i].empty()) continue;
        sum += DiscoveryRate(predictions[i], positions[i].history, k, m);
        ++counted;
      }
      row.discovery[{k, m}] = counted ? sum / static_cast<double>(counted) : 1.0;
    }
  }
  row.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return row;
}

std::optional<double> RankingAuc(const model::SpacetimeGR<float>& model,
                                 const std::vector<data::SftSample>& samples) {
  std::vector<std::vector<float>> per_sample(samples.size());
  ParallelFor(samples.size(), [&](std::size_t i) {
    const data::SftSample& s = samples[i];
    std::vector<catalog::PoiId> candidates = s.positives;
    candidates.insert(candidates.end(), s.negatives.begin(), s.negatives.end());
    if (candidates.empty()) return;
    per_sample[i] = model.RankCandidates(s.profile, s.history, s.request, candidates);
  });
  std::vector<double> scores;
  std::vector<int> labels;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = 0; j < per_sample[i].size(); ++j) {
      scores.push_back(per_sample[i][j]);
      labels.push_back(j < samples[i].positives.size() ? 1 : 0);
    }
  }
  return Auc(scores, labels);
}

}  // namespace stgr::eval
