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

#include "stgr/infer/export.h"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "stgr/common/error.h"

namespace stgr::infer {

namespace {

std::vector<float> Normalized(const float* v, int n) {
  double sq = 0.0;
  for (int i = 0; i < n; ++i) sq += static_cast<double>(v[i]) * v[i];
  if (!(sq > 0.0) || !std::isfinite(sq)) throw NumericError("cannot normalize a zero embedding");
  const double inv = 1.0 / std::sqrt(sq);
  std::vector<float> out(n);
  for (int i = 0; i < n; ++i) out[i] = static_cast<float>(v[i] * inv);
  return out;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

}  // namespace

std::vector<float> UserEmbedding(const model::SpacetimeGR<float>& model,
                                 const data::UserProfile& profile,
                                 const std::vector<data::Action>& history,
                                 const data::RequestContext& request) {
  nn::Tape<float> tape(model.params(), nullptr);
  const auto& v = tape.value(model.UserTower(tape, profile, history, request));
  return Normalized(v.data(), v.cols());
}

std::vector<std::vector<float>> PoiEmbeddings(const model::SpacetimeGR<float>& model,
                                              const std::vector<catalog::PoiId>& pois) {
  constexpr std::size_t kBatch = 64;
  std::vector<std::vector<float>> out;
  for (std::size_t lo = 0; lo < pois.size(); lo += kBatch) {
    const std::vector<catalog::PoiId> batch(
        pois.begin() + lo, pois.begin() + std::min(pois.size(), lo + kBatch));
    nn::Tape<float> tape(model.params(), nullptr);
    const auto& v = tape.value(model.PoiTower(tape, batch));
    for (int r = 0; r < v.rows(); ++r) out.push_back(Normalized(v.row(r), v.cols()));
  }
  return out;
}

int ExportUserEmbeddings(const data::Dataset& dataset, const model::SpacetimeGR<float>& model,
                         const std::filesystem::path& path) {
  std::ofstream out = OpenOut(path);
  int n = 0;
  for (const auto& seq : dataset) {
    if (seq.actions.size() < 2) continue;
    const data::Action& last = seq.actions.back();
    const std::vector<data::Action> history(seq.actions.begin(), seq.actions.end() - 1);
    nlohmann::ordered_json rec;
    rec["id"] = seq.user_id;
    rec["vector"] = UserEmbedding(model, seq.profile, history, {last.t, last.g_u});
    out << rec.dump() << '\n';
    ++n;
  }
  if (!out) throw DataError("short write to " + path.string());
  return n;
}

int ExportPoiEmbeddings(const model::SpacetimeGR<float>& model,
                        const std::filesystem::path& path) {
  std::vector<catalog::PoiId> ids;
  for (const auto& p : model.context().catalog().pois()) ids.push_back(p.poi_id);
  const auto vectors = PoiEmbeddings(model, ids);
  std::ofstream out = OpenOut(path);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    nlohmann::ordered_json rec;
    rec["id"] = ids[i];
    rec["vector"] = vectors[i];
    out << rec.dump() << '\n';
  }
  if (!out) throw DataError("short write to " + path.string());
  return static_cast<int>(ids.size());
}

}  // namespace stgr::infer
