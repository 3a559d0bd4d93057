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

#include "stgr/train/objectives.h"

#include "stgr/common/error.h"

namespace stgr::train {

namespace {

std::vector<catalog::PoiId> Candidates(const data::SftSample& s) {
  std::vector<catalog::PoiId> c = s.positives;
  c.insert(c.end(), s.negatives.begin(), s.negatives.end());
  return c;
}

std::vector<std::pair<int, int>> Rows(int begin, int n) {
  std::vector<std::pair<int, int>> rows;
  for (int i = 0; i < n; ++i) rows.emplace_back(0, begin + i);
  return rows;
}

}  // namespace

template <typename T>
typename nn::Tape<T>::Var PretrainObjective(nn::Tape<T>& tape,
                                            const model::SpacetimeGR<T>& model,
                                            const model::PretrainItem& item, T scale) {
  return model.PretrainLoss(tape, item, scale);
}

template <typename T>
typename nn::Tape<T>::Var EmbSftObjective(nn::Tape<T>& tape,
                                          const model::SpacetimeGR<T>& model,
                                          const data::SftSample& sample, T tau) {
  if (sample.positives.empty()) throw DataError("sample " + sample.user_id + " has no positives");
  auto user = model.UserTower(tape, sample.profile, sample.history, sample.request);
  auto pois = model.PoiTower(tape, Candidates(sample));
  auto cos = tape.CosineRows(user, pois);
  std::vector<int> is_pos(sample.positives.size() + sample.negatives.size(), 0);
  std::fill(is_pos.begin(), is_pos.begin() + sample.positives.size(), 1);
  return tape.InfoNce(cos, is_pos, tau);
}

template <typename T>
typename nn::Tape<T>::Var GenSftObjective(nn::Tape<T>& tape,
                                          const model::SpacetimeGR<T>& model,
                                          const data::SftSample& sample) {
  auto z = model.RankLogits(tape, sample.profile, sample.history, sample.request,
                            Candidates(sample));
  std::vector<int> y(sample.positives.size() + sample.negatives.size(), 0);
  std::fill(y.begin(), y.begin() + sample.positives.size(), 1);
  return tape.BceWithLogits(z, y);
}

template <typename T>
std::vector<T> ReferenceLogProbs(const model::SpacetimeGR<T>& reference,
                                 const data::SftSample& sample) {
  nn::Tape<T> tape(reference.params(), nullptr);
  const auto& v = tape.value(reference.JointLogProb(tape, sample.profile, sample.history,
                                                    sample.request, Candidates(sample)));
  return v.values();
}

template <typename T>
typename nn::Tape<T>::Var DpoObjective(nn::Tape<T>& tape, const model::SpacetimeGR<T>& model,
                                       const data::SftSample& sample,
                                       const std::vector<T>& reference, T beta) {
  const int np = static_cast<int>(sample.positives.size());
  const int nn_ = static_cast<int>(sample.negatives.size());
  if (np == 0 || nn_ == 0) {
    throw DataError("preference sample " + sample.user_id + " needs positives and negatives");
  }
  if (static_cast<int>(reference.size()) != np + nn_) {
    throw UsageError("reference log-probabilities do not match the sample");
  }
  auto lp = model.JointLogProb(tape, sample.profile, sample.history, sample.request,
                               Candidates(sample));
  auto pos = tape.Arrange({lp}, Rows(0, np));
  auto neg = tape.Arrange({lp}, Rows(np, nn_));
  std::vector<T> ref_pos(reference.begin(), reference.begin() + np);
  std::vector<T> ref_neg(reference.begin() + np, reference.end());
  return tape.Dpo(pos, neg, ref_pos, ref_neg, beta);
}

double MeanPairMargin(const model::SpacetimeGR<float>& model,
                      const std::vector<data::SftSample>& samples) {
  double total = 0.0;
  long pairs = 0;
  for (const auto& s : samples) {
    if (s.positives.empty() || s.negatives.empty()) continue;
    const auto lp = ReferenceLogProbs(model, s);
    const std::size_t np = s.positives.size();
    for (std::size_t j = 0; j < np; ++j) {
      for (std::size_t k = np; k < lp.size(); ++k) {
        total += static_cast<double>(lp[j]) - lp[k];
        ++pairs;
      }
    }
  }
  if (pairs == 0) throw DataError("no preference pairs to measure");
  return total / pairs;
}

#define STGR_INSTANTIATE(T)                                                              \
  template nn::Tape<T>::Var PretrainObjective(nn::Tape<T>&, const model::SpacetimeGR<T>&, \
                                              const model::PretrainItem&, T);             \
  template nn::Tape<T>::Var EmbSftObjective(nn::Tape<T>&, const model::SpacetimeGR<T>&,   \
                                            const data::SftSample&, T);                   \
  template nn::Tape<T>::Var GenSftObjective(nn::Tape<T>&, const model::SpacetimeGR<T>&,   \
                                            const data::SftSample&);                      \
  template std::vector<T> ReferenceLogProbs(const model::SpacetimeGR<T>&,                 \
                                            const data::SftSample&);                      \
  template nn::Tape<T>::Var DpoObjective(nn::Tape<T>&, const model::SpacetimeGR<T>&,      \
                                         const data::SftSample&, const std::vector<T>&, T);

STGR_INSTANTIATE(float)
STGR_INSTANTIATE(double)
#undef STGR_INSTANTIATE

}  // namespace stgr::train
