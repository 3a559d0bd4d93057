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

#include "stgr/nn/decoder.h"

#include <string>

namespace stgr::nn {

void DecoderConfig::Validate() const {
  if (layers < 1 || dim < 1 || heads < 1 || ffn_dim < 1) {
    throw UsageError("decoder sizes must be positive");
  }
  if (dim % heads != 0) throw UsageError("decoder dim must be divisible by heads");
  if ((dim / heads) % 2 != 0) throw UsageError("decoder head width must be even");
}

namespace {

template <typename Fn>
DecoderIds Build(const DecoderConfig& c, Fn&& add) {
  DecoderIds ids;
  for (int l = 0; l < c.layers; ++l) {
    const std::string p = "layer" + std::to_string(l) + ".";
    DecoderLayerIds L;
    L.attn_norm = add(p + "attn_norm", 1, c.dim, true);
    L.wq = add(p + "wq", c.dim, c.dim, false);
    L.wk = add(p + "wk", c.dim, c.dim, false);
    L.wv = add(p + "wv", c.dim, c.dim, false);
    L.wo = add(p + "wo", c.dim, c.dim, false);
    L.ffn_norm = add(p + "ffn_norm", 1, c.dim, true);
    L.w_gate = add(p + "w_gate", c.dim, c.ffn_dim, false);
    L.w_up = add(p + "w_up", c.dim, c.ffn_dim, false);
    L.w_down = add(p + "w_down", c.ffn_dim, c.dim, false);
    ids.layers.push_back(L);
  }
  ids.final_norm = add("final_norm", 1, c.dim, true);
  return ids;
}

}  // namespace

template <typename T>
DecoderIds RegisterDecoder(ParameterSet<T>& params, const DecoderConfig& config,
                           double stddev, std::mt19937_64& rng) {
  config.Validate();
  return Build(config, [&](const std::string& name, int r, int c, bool gain) {
    return gain ? params.AddConstant(name, r, c, T(1))
                : params.AddNormal(name, r, c, stddev, rng);
  });
}

template <typename T>
DecoderIds FindDecoder(const ParameterSet<T>& params, const DecoderConfig& config) {
  config.Validate();
  return Build(config, [&](const std::string& name, int r, int c, bool) {
    const int id = params.Id(name);
    CheckShape(params.value(id).rows() == r && params.value(id).cols() == c,
               "parameter " + name);
    return id;
  });
}

template <typename T>
typename Tape<T>::Var DecoderForward(Tape<T>& tape, typename Tape<T>::Var x,
                                     const AttentionMask& mask,
                                     const std::vector<int>& positions,
                                     const DecoderConfig& config,
                                     const DecoderIds& ids) {
  CheckShape(tape.value(x).cols() == config.dim, "decoder input width");
  for (std::size_t l = 0; l < ids.layers.size(); ++l) {
    const DecoderLayerIds& L = ids.layers[l];
    auto h = tape.RmsNorm(x, L.attn_norm, config.norm_eps);
    auto q = tape.Linear(h, L.wq);
    auto k = tape.Linear(h, L.wk);
    auto v = tape.Linear(h, L.wv);
    auto a = tape.Attention(q, k, v, config.heads, positions, mask, config.rope_base);
    x = tape.Add(x, tape.Linear(a, L.wo));
    h = tape.RmsNorm(x, L.ffn_norm, config.norm_eps);
    auto f = tape.SwiGlu(tape.Linear(h, L.w_gate), tape.Linear(h, L.w_up));
    x = tape.Add(x, tape.Linear(f, L.w_down));
    tape.CheckFinite(x, "decoder layer " + std::to_string(l));
  }
  return tape.RmsNorm(x, ids.final_norm, config.norm_eps);
}

template DecoderIds RegisterDecoder(ParameterSet<float>&, const DecoderConfig&,
                                    double, std::mt19937_64&);
template DecoderIds RegisterDecoder(ParameterSet<double>&, const DecoderConfig&,
                                    double, std::mt19937_64&);
template DecoderIds FindDecoder(const ParameterSet<float>&, const DecoderConfig&);
template DecoderIds FindDecoder(const ParameterSet<double>&, const DecoderConfig&);
template Tape<float>::Var DecoderForward(Tape<float>&, Tape<float>::Var,
                                         const AttentionMask&, const std::vector<int>&,
                                         const DecoderConfig&, const DecoderIds&);
template Tape<double>::Var DecoderForward(Tape<double>&, Tape<double>::Var,
                                          const AttentionMask&, const std::vector<int>&,
                                          const DecoderConfig&, const DecoderIds&);

}  // namespace stgr::nn
