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

#ifndef STGR_INFER_DECODE_H_
#define STGR_INFER_DECODE_H_

#include <string>
#include <vector>

#include "stgr/data/action.h"
#include "stgr/model/spacetime_gr.h"

namespace stgr::infer {

struct RecommendRequest {
  data::UserProfile profile;
  std::vector<data::Action> actions;  // history; only the last max_len count
  std::int64_t t_req = 0;
  geo::GeoPoint g_req;
  int k = 10;
  int w_block = 10;
  int w_inner = 10;
};

struct Recommendation {
  catalog::PoiId poi_id = 0;
  double joint_prob = 0.0;  // raw softmax values, no renormalization
  catalog::BlockId block = 0;
  catalog::InnerId inner = 0;
  int block_token = -1;
  int inner_token = 0;
};

struct DecodeResult {
  std::vector<Recommendation> items;  // joint_prob descending, ties by token ids
  std::vector<std::string> warnings;
};

// Throws UsageError for k < 1 or a beam width < 1.
void ValidateRequest(const RecommendRequest& req);

// Appends the request token, keeps the w_block most probable block tokens,
// expands each by its w_inner most probable inner tokens within [1, K_b],
// and returns the top k by joint probability. In check-in mode the single
// POI step keeps the top k POI tokens. Fewer than k candidates: all of them
// plus a warning.
DecodeResult BeamDecode(const RecommendRequest& req, const model::SpacetimeGR<float>& model);

// Every POI scored by its joint probability, in the same order as
// BeamDecode.
std::vector<Recommendation> ExhaustiveOracle(const RecommendRequest& req,
                                             const model::SpacetimeGR<float>& model);

// Ranking scores P_i of the candidates (same order).
std::vector<float> Score(const RecommendRequest& req,
                         const std::vector<catalog::PoiId>& candidates,
                         const model::SpacetimeGR<float>& model);

}  // namespace stgr::infer

#endif  // STGR_INFER_DECODE_H_
