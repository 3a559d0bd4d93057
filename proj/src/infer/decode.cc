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

#include "stgr/infer/decode.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stgr/common/error.h"

namespace stgr::infer {

namespace {

using Model = model::SpacetimeGR<float>;

// log softmax over the whole row, evaluated at the given columns.
std::vector<double> LogProbsAt(const float* row, int cols, int begin, int count) {
  double mx = row[0];
  for (int c = 1; c < cols; ++c) mx = std::max(mx, static_cast<double>(row[c]));
  double sum = 0.0;
  for (int c = 0; c < cols; ++c) sum += std::exp(row[c] - mx);
  const double log_z = mx + std::log(sum);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = row[begin + i] - log_z;
  return out;
}

// Indices of the `width` largest values; ties go to the lower index.
std::vector<int> TopIndices(const std::vector<double>& v, int width) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  const int keep = std::min<int>(width, static_cast<int>(idx.size()));
  std::partial_sort(idx.begin(), idx.begin() + keep, idx.end(), [&](int a, int b) {
    return v[a] > v[b] || (v[a] == v[b] && a < b);
  });
  idx.resize(keep);
  return idx;
}

bool Before(const Recommendation& a, const Recommendation& b) {
  if (a.joint_prob != b.joint_prob) return a.joint_prob > b.joint_prob;
  if (a.block_token != b.block_token) return a.block_token < b.block_token;
  return a.inner_token < b.inner_token;
}

Recommendation Make(const model::ModelContext& ctx, catalog::BlockId block, int inner_token,
                    double log_prob) {
  Recommendation r;
  r.block = block;
  r.inner = inner_token - ctx.vocab().inner_begin() + 1;
  r.poi_id = ctx.index().Decode(block, r.inner);
  r.block_token = ctx.vocab().num_blocks() > 0 ? ctx.vocab().BlockToken(block) : -1;
  r.inner_token = inner_token;
  r.joint_prob = std::exp(log_prob);
  return r;
}

// Candidates from the given blocks (ascending ids) and inner widths.
std::vector<Recommendation> Expand(const RecommendRequest& req, const Model& model,
                                   std::vector<catalog::BlockId> blocks,
                                   const std::vector<double>& block_lp, int w_inner) {
  const auto& ctx = model.context();
  const auto& vocab = ctx.vocab();
  std::sort(blocks.begin(), blocks.end());
  const data::RequestContext request{req.t_req, req.g_req};
  const nn::Matrix<float> logits = model.BlockLogits(req.profile, req.actions, request, blocks);
  std::vector<Recommendation> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int kb = ctx.index().block_size(blocks[i]);
    const auto inner_lp =
        LogProbsAt(logits.row(static_cast<int>(i)), logits.cols(), vocab.inner_begin(), kb);
    for (int j : TopIndices(inner_lp, w_inner)) {
      out.push_back(Make(ctx, blocks[i], vocab.inner_begin() + j,
                         block_lp[blocks[i]] + inner_lp[j]));
    }
  }
  return out;
}

std::vector<Recommendation> Checkin(const RecommendRequest& req, const Model& model,
                                    int width) {
  const auto& ctx = model.context();
  const auto& vocab = ctx.vocab();
  const nn::Matrix<float> logits =
      model.PrefixLogits(req.profile, req.actions, {req.t_req, req.g_req});
  const auto lp = LogProbsAt(logits.row(0), logits.cols(), vocab.inner_begin(), vocab.num_inner());
  std::vector<Recommendation> out;
  for (int j : TopIndices(lp, width)) out.push_back(Make(ctx, 0, vocab.inner_begin() + j, lp[j]));
  return out;
}

std::vector<double> BlockLogProbs(const RecommendRequest& req, const Model& model) {
  const auto& vocab = model.context().vocab();
  const nn::Matrix<float> logits =
      model.PrefixLogits(req.profile, req.actions, {req.t_req, req.g_req});
  return LogProbsAt(logits.row(0), logits.cols(), vocab.block_begin(), vocab.num_blocks());
}

}  // namespace

void ValidateRequest(const RecommendRequest& req) {
  if (req.k < 1) throw UsageError("k must be >= 1");
  if (req.w_block < 1 || req.w_inner < 1) throw UsageError("beam widths must be >= 1");
  if (!geo::IsValid(req.g_req)) throw UsageError("g_req is not a valid coordinate");
  if (!data::HasThirteenDigits(req.t_req)) throw UsageError("t_req must be epoch milliseconds");
}

DecodeResult BeamDecode(const RecommendRequest& req, const Model& model) {
  ValidateRequest(req);
  DecodeResult result;
  if (model.config().mode == model::Mode::kCheckin) {
    result.items = Checkin(req, model, std::max(req.k, req.w_block * req.w_inner));
  } else {
    const auto block_lp = BlockLogProbs(req, model);
    std::vector<catalog::BlockId> blocks;
    for (int b : TopIndices(block_lp, req.w_block)) blocks.push_back(b);
    result.items = Expand(req, model, blocks, block_lp, req.w_inner);
  }
  std::sort(result.items.begin(), result.items.end(), Before);
  if (static_cast<int>(result.items.size()) < req.k) {
    result.warnings.push_back("k=" + std::to_string(req.k) + " exceeds the " +
                              std::to_string(result.items.size()) +
                              " candidates generated; returning all");
  } else {
    result.items.resize(req.k);
  }
  return result;
}

std::vector<Recommendation> ExhaustiveOracle(const RecommendRequest& req, const Model& model) {
  const auto& ctx = model.context();
  std::vector<Recommendation> out;
  if (model.config().mode == model::Mode::kCheckin) {
    out = Checkin(req, model, ctx.vocab().num_inner());
  } else {
    const auto block_lp = BlockLogProbs(req, model);
    std::vector<catalog::BlockId> blocks(ctx.index().num_blocks());
    std::iota(blocks.begin(), blocks.end(), 0);
    out = Expand(req, model, blocks, block_lp, ctx.vocab().num_inner());
  }
  std::sort(out.begin(), out.end(), Before);
  return out;
}

std::vector<float> Score(const RecommendRequest& req,
                         const std::vector<catalog::PoiId>& candidates, const Model& model) {
  if (!geo::IsValid(req.g_req)) throw UsageError("g_req is not a valid coordinate");
  if (!data::HasThirteenDigits(req.t_req)) throw UsageError("t_req must be epoch milliseconds");
  return model.RankCandidates(req.profile, req.actions, {req.t_req, req.g_req}, candidates);
}

}  // namespace stgr::infer
