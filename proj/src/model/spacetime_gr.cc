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

#include "stgr/model/spacetime_gr.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "stgr/common/error.h"

namespace stgr::model {

std::vector<int> TimeRows(std::int64_t t_ms) {
  const data::TimeFeatures tf = data::DecomposeTime(t_ms);
  return {tf.month, 12 + tf.weekday, 19 + tf.day, 50 + tf.hour};
}

namespace {

template <typename T>
using Matrix = nn::Matrix<T>;

std::vector<int> Iota(int begin, int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = begin + i;
  return v;
}

template <typename T>
void SoftmaxRowsInPlace(Matrix<T>& m) {
  for (int r = 0; r < m.rows(); ++r) {
    T* row = m.row(r);
    const T mx = *std::max_element(row, row + m.cols());
    double sum = 0.0;
    for (int c = 0; c < m.cols(); ++c) sum += std::exp(static_cast<double>(row[c] - mx));
    const double log_sum = std::log(sum);
    for (int c = 0; c < m.cols(); ++c) {
      row[c] = static_cast<T>(std::exp(static_cast<double>(row[c] - mx) - log_sum));
    }
  }
}

}  // namespace

template <typename T>
SpacetimeGR<T>::SpacetimeGR(std::shared_ptr<const ModelContext> context,
                            ModelConfig config, std::uint64_t seed)
    : context_(std::move(context)), config_(std::move(config)) {
  config_.Validate();
  Register(seed);
  Resolve();
}

template <typename T>
SpacetimeGR<T>::SpacetimeGR(std::shared_ptr<const ModelContext> context,
                            ModelConfig config, nn::ParameterSet<T> params)
    : context_(std::move(context)), config_(std::move(config)), params_(std::move(params)) {
  config_.Validate();
  Resolve();
}

template <typename T>
std::vector<typename SpacetimeGR<T>::Shape> SpacetimeGR<T>::Shapes() const {
  const int d = config_.decoder.dim;
  const catalog::Vocabulary& vocab = context_->vocab();
  const bool online = config_.mode == Mode::kOnline;
  std::vector<Shape> s;
  if (config_.spatiotemporal) {
    s.push_back({"emb_time", kTimeRows, config_.time_sub_dim, false});
    s.push_back({"emb_geo",
                 static_cast<int>(config_.geo_levels * config_.geo_table_size),
                 config_.geo_dim, false});
    if (online) s.push_back({"mix_u", 1, 2, true});
    s.push_back({"mix_p", 1, 3, true});
  } else {
    s.push_back({"u_null", 1, d, false});
    s.push_back({"mix_p", 1, 2, true});
  }
  s.push_back({"emb_poi", vocab.action_begin(), d, false});
  s.push_back({"emb_cat", context_->catalog().num_categories(), d, false});
  if (online) s.push_back({"emb_act", vocab.num_action_types(), d, false});
  s.push_back({"emb_profile", vocab.num_profile_tokens(), d, false});
  if (config_.multimodal && context_->catalog().mm_dim() > 0) {
    s.push_back({"mm_proj", context_->catalog().mm_dim(), d, false});
  }
  s.push_back({"lm_head", d, vocab.size(), false});
  s.push_back({"tower_u", d, config_.embed_dim, false});
  s.push_back({"tower_p", d, config_.embed_dim, false});
  s.push_back({"cls", d, 1, false});
  return s;
}

template <typename T>
void SpacetimeGR<T>::Register(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (const Shape& s : Shapes()) {
    if (s.zero) {
      params_.AddConstant(s.name, s.rows, s.cols, T(0));
    } else {
      params_.AddNormal(s.name, s.rows, s.cols, config_.init_std, rng);
    }
  }
  nn::RegisterDecoder(params_, config_.decoder, config_.init_std, rng);
}

template <typename T>
void SpacetimeGR<T>::Resolve() {
  std::size_t expected = 0;
  for (const Shape& s : Shapes()) {
    const int id = params_.Find(s.name);
    if (id < 0) throw DataError(std::string("model parameter missing: ") + s.name);
    const auto& v = params_.value(id);
    if (v.rows() != s.rows || v.cols() != s.cols) {
      throw DataError(std::string("model parameter ") + s.name + " has shape " +
                      std::to_string(v.rows()) + "x" + std::to_string(v.cols()) +
                      ", expected " + std::to_string(s.rows) + "x" +
                      std::to_string(s.cols));
    }
    ++expected;
  }
  ids_.decoder = nn::FindDecoder(params_, config_.decoder);
  expected += 9 * ids_.decoder.layers.size() + 1;
  if (static_cast<std::size_t>(params_.size()) != expected) {
    throw DataError("model has " + std::to_string(params_.size()) +
                    " parameter tensors, expected " + std::to_string(expected));
  }
  ids_.emb_time = params_.Find("emb_time");
  ids_.emb_geo = params_.Find("emb_geo");
  ids_.emb_poi = params_.Find("emb_poi");
  ids_.emb_cat = params_.Find("emb_cat");
  ids_.emb_act = params_.Find("emb_act");
  ids_.emb_profile = params_.Find("emb_profile");
  ids_.mix_u = params_.Find("mix_u");
  ids_.mix_p = params_.Find("mix_p");
  ids_.u_null = params_.Find("u_null");
  ids_.mm_proj = params_.Find("mm_proj");
  ids_.lm_head = params_.Find("lm_head");
  ids_.tower_u = params_.Find("tower_u");
  ids_.tower_p = params_.Find("tower_p");
  ids_.cls = params_.Find("cls");
}

// ---------------------------------------------------------------------------
// Token sequences

template <typename T>
void SpacetimeGR<T>::AppendUser(TokenSeq& seq, std::int64_t t,
                                const geo::GeoPoint& g) const {
  const int index = static_cast<int>(seq.time_rows.size() / 4);
  for (int r : TimeRows(t)) seq.time_rows.push_back(r);
  // Check-in mode never looks at the user's location.
  if (config_.mode == Mode::kOnline && config_.spatiotemporal) {
    for (int r : context_->GeoRows(g)) seq.user_geo.push_back(r);
  }
  seq.layout.emplace_back(static_cast<int>(TokenGroup::kUser), index);
}

template <typename T>
void SpacetimeGR<T>::AppendBlock(TokenSeq& seq, int block_token) const {
  if (block_token < 0 || block_token >= context_->vocab().inner_begin()) {
    throw LookupError(LookupError::Kind::kBadBlock,
                      "no block token " + std::to_string(block_token));
  }
  seq.layout.emplace_back(static_cast<int>(TokenGroup::kBlock),
                          static_cast<int>(seq.block_rows.size()));
  seq.block_rows.push_back(block_token);
}

template <typename T>
void SpacetimeGR<T>::AppendInner(TokenSeq& seq, const PoiFeatures& f) const {
  seq.layout.emplace_back(static_cast<int>(TokenGroup::kInner),
                          static_cast<int>(seq.inner_rows.size()));
  seq.inner_rows.push_back(f.inner_token);
  seq.inner_cats.push_back(f.category);
  if (config_.spatiotemporal) {
    seq.inner_geo.insert(seq.inner_geo.end(), f.geo_rows.begin(), f.geo_rows.end());
  }
  const auto& mm = context_->catalog().pois()[f.catalog_pos].mm_vector;
  seq.inner_mm.push_back(mm.empty() ? nullptr : &mm);
}

template <typename T>
void SpacetimeGR<T>::AppendAction(TokenSeq& seq, data::ActionType a) const {
  seq.layout.emplace_back(static_cast<int>(TokenGroup::kAction),
                          static_cast<int>(seq.action_rows.size()));
  seq.action_rows.push_back(static_cast<int>(a));
}

template <typename T>
void SpacetimeGR<T>::AppendPoi(TokenSeq& seq, const PoiFeatures& f) const {
  if (config_.mode == Mode::kOnline) AppendBlock(seq, f.block_token);
  AppendInner(seq, f);
}

template <typename T>
TokenSeq SpacetimeGR<T>::Prefix(const data::UserProfile& profile,
                                const std::vector<data::Action>& history,
                                const data::RequestContext* request) const {
  TokenSeq seq;
  for (int r : data::ProfileRows(profile)) {
    seq.layout.emplace_back(static_cast<int>(TokenGroup::kProfile),
                            static_cast<int>(seq.profile_rows.size()));
    seq.profile_rows.push_back(r);
  }
  const std::size_t keep = std::min<std::size_t>(history.size(), config_.max_len);
  for (std::size_t i = history.size() - keep; i < history.size(); ++i) {
    const data::Action& a = history[i];
    AppendUser(seq, a.t, a.g_u);
    AppendPoi(seq, context_->Features(a.poi));
    if (config_.mode == Mode::kOnline) AppendAction(seq, a.action_type);
  }
  if (request != nullptr) AppendUser(seq, request->t, request->g);
  return seq;
}

template <typename T>
std::optional<PretrainItem> SpacetimeGR<T>::BuildPretrain(
    const data::SequenceSample& sample) const {
  PretrainItem item;
  item.tokens = Prefix(sample.profile, sample.actions, nullptr);
  const std::size_t keep = std::min<std::size_t>(sample.actions.size(), config_.max_len);
  const std::size_t first = sample.actions.size() - keep;
  item.num_actions = static_cast<int>(keep);
  const int stride = tokens_per_action();
  const int base0 = static_cast<int>(item.tokens.profile_rows.size());
  for (std::size_t i = first + 1; i < sample.actions.size(); ++i) {
    const data::Action& a = sample.actions[i];
    if (a.interest != 1) continue;
    const PoiFeatures& f = context_->Features(a.poi);
    const int base = base0 + static_cast<int>(i - first) * stride;
    if (config_.mode == Mode::kOnline) {
      item.rows.push_back(base);
      item.targets.push_back(f.block_token);
      item.rows.push_back(base + 1);
      item.targets.push_back(f.inner_token);
    } else {
      item.rows.push_back(base);
      item.targets.push_back(f.inner_token);
    }
  }
  if (item.rows.empty()) return std::nullopt;
  return item;
}

// ---------------------------------------------------------------------------
// Forward passes

template <typename T>
typename SpacetimeGR<T>::Var SpacetimeGR<T>::Embed(Tape& tape, const TokenSeq& seq) const {
  if (seq.size() == 0) throw UsageError("empty token sequence");
  std::vector<Var> sources;
  int group_source[kNumTokenGroups] = {-1, -1, -1, -1, -1};
  auto add = [&](TokenGroup g, Var v) {
    group_source[static_cast<int>(g)] = static_cast<int>(sources.size());
    sources.push_back(v);
  };
  if (!seq.profile_rows.empty()) {
    add(TokenGroup::kProfile, tape.Gather(ids_.emb_profile, seq.profile_rows, 1));
  }
  const int num_user = static_cast<int>(seq.time_rows.size() / 4);
  if (num_user > 0) {
    Var u;
    if (!config_.spatiotemporal) {
      u = tape.Gather(ids_.u_null, std::vector<int>(num_user, 0), 1);
    } else {
      Var time = tape.Gather(ids_.emb_time, seq.time_rows, 4);
      if (config_.mode == Mode::kOnline) {
        Var geo = tape.Gather(ids_.emb_geo, seq.user_geo, config_.geo_levels);
        u = tape.Mix({time, geo}, tape.Param(ids_.mix_u));
      } else {
        u = time;
      }
    }
    add(TokenGroup::kUser, u);
  }
  if (!seq.block_rows.empty()) {
    add(TokenGroup::kBlock, tape.Gather(ids_.emb_poi, seq.block_rows, 1));
  }
  if (!seq.inner_rows.empty()) {
    Var poi = tape.Gather(ids_.emb_poi, seq.inner_rows, 1);
    Var cat = tape.Gather(ids_.emb_cat, seq.inner_cats, 1);
    Var inner;
    if (config_.spatiotemporal) {
      Var geo = tape.Gather(ids_.emb_geo, seq.inner_geo, config_.geo_levels);
      inner = tape.Mix({poi, cat, geo}, tape.Param(ids_.mix_p));
    } else {
      inner = tape.Mix({poi, cat}, tape.Param(ids_.mix_p));
    }
    if (ids_.mm_proj >= 0) {
      const int mm_dim = context_->catalog().mm_dim();
      Matrix<T> mm(static_cast<int>(seq.inner_mm.size()), mm_dim);
      for (int r = 0; r < mm.rows(); ++r) {
        if (seq.inner_mm[r] == nullptr) continue;
        for (int c = 0; c < mm_dim; ++c) mm(r, c) = static_cast<T>((*seq.inner_mm[r])[c]);
      }
      inner = tape.Add(inner, tape.Linear(tape.Input(std::move(mm)), ids_.mm_proj));
    }
    add(TokenGroup::kInner, inner);
  }
  if (!seq.action_rows.empty()) {
    add(TokenGroup::kAction, tape.Gather(ids_.emb_act, seq.action_rows, 1));
  }
  std::vector<std::pair<int, int>> layout;
  layout.reserve(seq.layout.size());
  for (const auto& [group, index] : seq.layout) {
    layout.emplace_back(group_source[group], index);
  }
  return tape.Arrange(sources, layout);
}

template <typename T>
typename SpacetimeGR<T>::Var SpacetimeGR<T>::Hidden(
    Tape& tape, const TokenSeq& seq, const nn::AttentionMask& mask,
    const std::vector<int>& positions) const {
  Var x = Embed(tape, seq);
  return nn::DecoderForward(tape, x, mask, positions, config_.decoder, ids_.decoder);
}

template <typename T>
typename SpacetimeGR<T>::Var SpacetimeGR<T>::Logits(Tape& tape, Var hidden,
                                                   const std::vector<int>& rows) const {
  std::vector<std::pair<int, int>> layout;
  layout.reserve(rows.size());
  for (int r : rows) layout.emplace_back(0, r);
  return tape.Linear(tape.Arrange({hidden}, layout), ids_.lm_head);
}

template <typename T>
typename SpacetimeGR<T>::Var SpacetimeGR<T>::PretrainLoss(Tape& tape,
                                                         const PretrainItem& item,
                                                         T scale) const {
  if (item.rows.empty()) throw UsageError("pretrain item has no supervised positions");
  const int n = item.tokens.size();
  Var h = Hidden(tape, item.tokens, nn::AttentionMask::Causal(n), Iota(0, n));
  Var logits = Logits(tape, h, item.rows);
  return tape.CrossEntropy(logits, item.targets, scale);
}

template <typename T>
nn::Matrix<T> SpacetimeGR<T>::LmProbs(const TokenSeq& seq) const {
  Tape tape(params_, nullptr);
  const int n = seq.size();
  Var h = Hidden(tape, seq, nn::AttentionMask::Causal(n), Iota(0, n));
  Matrix<T> p = tape.value(Logits(tape, h, Iota(0, n)));
  SoftmaxRowsInPlace(p);
  return p;
}

template <typename T>
typename SpacetimeGR<T>::Var SpacetimeGR<T>::UserTower(
    Tape& tape, const data::UserProfile& profile, const std::vector<data::Action>& history,
    const data::RequestContext& request) const {
  TokenSeq seq = Prefix(profile, history, &request);
  const int n = seq.size();
  Var h = Hidden(tape, seq, nn::AttentionMask::Causal(n), Iota(0, n));
  return tape.Linear(tape.Arrange({h}, {{0, n - 1}}), ids_.tower_u);
}

template <typename T>
typename SpacetimeGR<T>::Var SpacetimeGR<T>::PoiTower(
    Tape& tape, const std::vector<catalog::PoiId>& pois) const {
  if (pois.empty()) throw UsageError("poi tower needs at least one POI");
  TokenSeq seq;
  for (catalog::PoiId id : pois) AppendPoi(seq, context_->Features(id));
  const int n = static_cast<int>(pois.size());
  const int w = RowsPerPoi();
  Var h = Hidden(tape, seq, nn::AttentionMask::Candidates(0, n, w),
                 nn::CandidatePositions(0, n, w));
  std::vector<std::pair<int, int>> last;
  for (int i = 0; i < n; ++i) last.emplace_back(0, i * w + w - 1);
  return tape.Linear(tape.Arrange({h}, last), ids_.tower_p);
}

template <typename T>
typename SpacetimeGR<T>::Var SpacetimeGR<T>::ForwardCandidates(
    Tape& tape, const data::UserProfile& profile, const std::vector<data::Action>& history,
    const data::RequestContext& request, const std::vector<catalog::PoiId>& candidates,
    int width, int* prefix_len) const {
  if (candidates.empty()) throw UsageError("empty candidate list");
  TokenSeq seq = Prefix(profile, history, &request);
  const int L = seq.size();
  for (catalog::PoiId id : candidates) {
    const PoiFeatures& f = context_->Features(id);
    if (width == RowsPerPoi()) {
      AppendPoi(seq, f);
    } else {
      AppendBlock(seq, f.block_token);
    }
  }
  const int n = static_cast<int>(candidates.size());
  *prefix_len = L;
  return Hidden(tape, seq, nn::AttentionMask::Candidates(L, n, width),
                nn::CandidatePositions(L, n, width));
}

template <typename T>
typename SpacetimeGR<T>::Var SpacetimeGR<T>::RankLogits(
    Tape& tape, const data::UserProfile& profile, const std::vector<data::Action>& history,
    const data::RequestContext& request,
    const std::vector<catalog::PoiId>& candidates) const {
  const int w = RowsPerPoi();
  int L = 0;
  Var h = ForwardCandidates(tape, profile, history, request, candidates, w, &L);
  std::vector<std::pair<int, int>> inner_rows;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    inner_rows.emplace_back(0, L + static_cast<int>(i) * w + w - 1);
  }
  return tape.Linear(tape.Arrange({h}, inner_rows), ids_.cls);
}

template <typename T>
std::vector<T> SpacetimeGR<T>::RankCandidates(
    const data::UserProfile& profile, const std::vector<data::Action>& history,
    const data::RequestContext& request,
    const std::vector<catalog::PoiId>& candidates) const {
  Tape tape(params_, nullptr);
  const Matrix<T>& z = tape.value(RankLogits(tape, profile, history, request, candidates));
  std::vector<T> p(candidates.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = static_cast<T>(1.0 / (1.0 + std::exp(-static_cast<double>(z[i]))));
  }
  return p;
}

template <typename T>
typename SpacetimeGR<T>::Var SpacetimeGR<T>::JointLogProb(
    Tape& tape, const data::UserProfile& profile, const std::vector<data::Action>& history,
    const data::RequestContext& request,
    const std::vector<catalog::PoiId>& candidates) const {
  if (candidates.empty()) throw UsageError("empty candidate list");
  const int n = static_cast<int>(candidates.size());
  if (config_.mode == Mode::kCheckin) {
    TokenSeq seq = Prefix(profile, history, &request);
    const int L = seq.size();
    Var h = Hidden(tape, seq, nn::AttentionMask::Causal(L), Iota(0, L));
    std::vector<int> cols;
    for (catalog::PoiId id : candidates) cols.push_back(context_->Features(id).inner_token);
    return tape.LogSoftmaxAt(Logits(tape, h, std::vector<int>(n, L - 1)), cols);
  }
  int L = 0;
  Var h = ForwardCandidates(tape, profile, history, request, candidates, 1, &L);
  std::vector<int> rows(n, L - 1);
  std::vector<int> cols;
  for (catalog::PoiId id : candidates) cols.push_back(context_->Features(id).block_token);
  for (int i = 0; i < n; ++i) {
    rows.push_back(L + i);
    cols.push_back(context_->Features(candidates[i]).inner_token);
  }
  Var lp = tape.LogSoftmaxAt(Logits(tape, h, rows), cols);
  std::vector<std::pair<int, int>> block_part, inner_part;
  for (int i = 0; i < n; ++i) {
    block_part.emplace_back(0, i);
    inner_part.emplace_back(0, n + i);
  }
  return tape.Add(tape.Arrange({lp}, block_part), tape.Arrange({lp}, inner_part));
}

template <typename T>
nn::Matrix<T> SpacetimeGR<T>::PrefixLogits(const data::UserProfile& profile,
                                           const std::vector<data::Action>& history,
                                           const data::RequestContext& request) const {
  Tape tape(params_, nullptr);
  TokenSeq seq = Prefix(profile, history, &request);
  const int L = seq.size();
  Var h = Hidden(tape, seq, nn::AttentionMask::Causal(L), Iota(0, L));
  return tape.value(Logits(tape, h, {L - 1}));
}

template <typename T>
nn::Matrix<T> SpacetimeGR<T>::BlockLogits(const data::UserProfile& profile,
                                          const std::vector<data::Action>& history,
                                          const data::RequestContext& request,
                                          const std::vector<catalog::BlockId>& blocks) const {
  if (config_.mode != Mode::kOnline) {
    throw UsageError("block decoding needs an online-mode model");
  }
  if (blocks.empty()) throw UsageError("no blocks to expand");
  Tape tape(params_, nullptr);
  TokenSeq seq = Prefix(profile, history, &request);
  const int L = seq.size();
  for (catalog::BlockId b : blocks) AppendBlock(seq, context_->vocab().BlockToken(b));
  const int n = static_cast<int>(blocks.size());
  Var h = Hidden(tape, seq, nn::AttentionMask::Candidates(L, n, 1),
                 nn::CandidatePositions(L, n, 1));
  return tape.value(Logits(tape, h, Iota(L, n)));
}

template class SpacetimeGR<float>;
template class SpacetimeGR<double>;

}  // namespace stgr::model
