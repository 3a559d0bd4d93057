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

#ifndef STGR_MODEL_SPACETIME_GR_H_
#define STGR_MODEL_SPACETIME_GR_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "stgr/data/action.h"
#include "stgr/data/sft.h"
#include "stgr/model/config.h"
#include "stgr/model/context.h"
#include "stgr/nn/decoder.h"
#include "stgr/nn/mask.h"
#include "stgr/nn/parameters.h"
#include "stgr/nn/tape.h"

namespace stgr::model {

// Calendar table layout: month rows 0..11, weekday 12..18, day 19..49,
// hour 50..73.
inline constexpr int kTimeRows = 74;
std::vector<int> TimeRows(std::int64_t t_ms);

// Token groups of an input sequence; every group is embedded in one pass.
enum class TokenGroup : int { kProfile = 0, kUser, kBlock, kInner, kAction };
inline constexpr int kNumTokenGroups = 5;

// Lookup rows for a token sequence, with the per-position order in layout.
struct TokenSeq {
  std::vector<int> profile_rows;
  std::vector<int> time_rows;    // 4 per user token
  std::vector<int> user_geo;     // geo levels per user token
  std::vector<int> block_rows;   // emb_poi rows
  std::vector<int> inner_rows;   // emb_poi rows
  std::vector<int> inner_cats;
  std::vector<int> inner_geo;    // geo levels per inner token
  std::vector<const std::vector<float>*> inner_mm;  // null when absent
  std::vector<int> action_rows;
  std::vector<std::pair<int, int>> layout;  // (group, index within group)

  int size() const { return static_cast<int>(layout.size()); }
};

// Supervised next-POI positions of one sequence.
struct PretrainItem {
  TokenSeq tokens;
  std::vector<int> rows;     // positions whose logits are scored
  std::vector<int> targets;  // vocabulary ids
  int num_actions = 0;       // after truncation
};

// Spacetime-GR: spatiotemporal token encoder, decoder stack, LM head, dual
// towers and the ranking classifier. Parameters are plain tensors; every
// forward goes through a Tape so training and inference share one path.
template <typename T>
class SpacetimeGR {
 public:
  using Tape = nn::Tape<T>;
  using Var = typename nn::Tape<T>::Var;

  // Fresh model with N(0, init_std) weights.
  SpacetimeGR(std::shared_ptr<const ModelContext> context, ModelConfig config,
              std::uint64_t seed);
  // Wraps existing parameters; throws DataError when a tensor is missing
  // or has the wrong shape.
  SpacetimeGR(std::shared_ptr<const ModelContext> context, ModelConfig config,
              nn::ParameterSet<T> params);

  const ModelConfig& config() const { return config_; }
  const ModelContext& context() const { return *context_; }
  const std::shared_ptr<const ModelContext>& context_ptr() const { return context_; }
  const nn::ParameterSet<T>& params() const { return params_; }
  nn::ParameterSet<T>& params() { return params_; }
  int vocab_size() const { return context_->vocab().size(); }
  // Tokens per action: 4 online, 2 in check-in mode.
  int tokens_per_action() const { return config_.mode == Mode::kOnline ? 4 : 2; }

  template <typename U>
  SpacetimeGR<U> Cast() const {
    return SpacetimeGR<U>(context_, config_, params_.template Cast<U>());
  }

  // Sequence building. History is cut to the most recent max_len actions.
  TokenSeq Prefix(const data::UserProfile& profile,
                  const std::vector<data::Action>& history,
                  const data::RequestContext* request) const;
  void AppendUser(TokenSeq& seq, std::int64_t t, const geo::GeoPoint& g) const;
  void AppendBlock(TokenSeq& seq, int block_token) const;
  void AppendInner(TokenSeq& seq, const PoiFeatures& f) const;
  void AppendAction(TokenSeq& seq, data::ActionType a) const;
  // Block and inner tokens online; the single POI token in check-in mode.
  void AppendPoi(TokenSeq& seq, const PoiFeatures& f) const;

  // Targets: u_i -> block_i and block_i -> inner_i for every action i >= 2
  // with It = 1 (u_i -> POI in check-in mode). Empty when there are none.
  std::optional<PretrainItem> BuildPretrain(const data::SequenceSample& sample) const;

  // T x d token embeddings.
  Var Embed(Tape& tape, const TokenSeq& seq) const;
  // T x d decoder output.
  Var Hidden(Tape& tape, const TokenSeq& seq, const nn::AttentionMask& mask,
             const std::vector<int>& positions) const;
  // Logits of the selected hidden rows, rows.size() x V.
  Var Logits(Tape& tape, Var hidden, const std::vector<int>& rows) const;

  // scale * summed cross-entropy of the item's targets.
  Var PretrainLoss(Tape& tape, const PretrainItem& item, T scale) const;
  // T x V softmax over a causal forward.
  nn::Matrix<T> LmProbs(const TokenSeq& seq) const;

  // 1 x d_e: W_u times the hidden state of the trailing request token.
  Var UserTower(Tape& tape, const data::UserProfile& profile,
                const std::vector<data::Action>& history,
                const data::RequestContext& request) const;
  // n x d_e: W_p times the last hidden state of each POI's own
  // [block, inner] forward (batched under an isolating mask).
  Var PoiTower(Tape& tape, const std::vector<catalog::PoiId>& pois) const;

  // n x 1 classifier logits W_c * H(inner_i); candidates see the prefix and
  // their own tokens only, all at the same positions.
  Var RankLogits(Tape& tape, const data::UserProfile& profile,
                 const std::vector<data::Action>& history,
                 const data::RequestContext& request,
                 const std::vector<catalog::PoiId>& candidates) const;
  // sigmoid(RankLogits) without recording.
  std::vector<T> RankCandidates(const data::UserProfile& profile,
                                const std::vector<data::Action>& history,
                                const data::RequestContext& request,
                                const std::vector<catalog::PoiId>& candidates) const;

  // n x 1 log P(block | prefix) + log P(inner | prefix, block); the POI token
  // log-probability in check-in mode.
  Var JointLogProb(Tape& tape, const data::UserProfile& profile,
                   const std::vector<data::Action>& history,
                   const data::RequestContext& request,
                   const std::vector<catalog::PoiId>& candidates) const;

  // Decoding steps. 1 x V logits after the request token.
  nn::Matrix<T> PrefixLogits(const data::UserProfile& profile,
                             const std::vector<data::Action>& history,
                             const data::RequestContext& request) const;
  // n x V logits at each appended block token.
  nn::Matrix<T> BlockLogits(const data::UserProfile& profile,
                            const std::vector<data::Action>& history,
                            const data::RequestContext& request,
                            const std::vector<catalog::BlockId>& blocks) const;

  // Parameter ids.
  struct Ids {
    int emb_time = -1, emb_geo = -1, emb_poi = -1, emb_cat = -1, emb_act = -1;
    int emb_profile = -1, mix_u = -1, mix_p = -1, u_null = -1, mm_proj = -1;
    int lm_head = -1, tower_u = -1, tower_p = -1, cls = -1;
    nn::DecoderIds decoder;
  };
  const Ids& ids() const { return ids_; }

 private:
  struct Shape {
    const char* name;
    int rows, cols;
    bool zero;  // constant 0 instead of random
  };
  std::vector<Shape> Shapes() const;
  void Register(std::uint64_t seed);
  void Resolve();
  Var ForwardCandidates(Tape& tape, const data::UserProfile& profile,
                        const std::vector<data::Action>& history,
                        const data::RequestContext& request,
                        const std::vector<catalog::PoiId>& candidates, int width,
                        int* prefix_len) const;
  int RowsPerPoi() const { return config_.mode == Mode::kOnline ? 2 : 1; }

  std::shared_ptr<const ModelContext> context_;
  ModelConfig config_;
  nn::ParameterSet<T> params_;
  Ids ids_;
};

extern template class SpacetimeGR<float>;
extern template class SpacetimeGR<double>;

}  // namespace stgr::model

#endif  // STGR_MODEL_SPACETIME_GR_H_
