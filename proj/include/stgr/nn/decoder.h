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

#ifndef STGR_NN_DECODER_H_
#define STGR_NN_DECODER_H_

#include <random>
#include <vector>

#include "stgr/nn/mask.h"
#include "stgr/nn/parameters.h"
#include "stgr/nn/tape.h"

namespace stgr::nn {

struct DecoderConfig {
  int layers = 2;
  int dim = 64;
  int heads = 4;
  int ffn_dim = 128;
  double norm_eps = 1e-5;
  double rope_base = 10000.0;

  // Throws UsageError for non-positive sizes, dim % heads != 0 or an odd
  // head width.
  void Validate() const;
};

struct DecoderLayerIds {
  int attn_norm, wq, wk, wv, wo;
  int ffn_norm, w_gate, w_up, w_down;
};

struct DecoderIds {
  std::vector<DecoderLayerIds> layers;
  int final_norm = -1;
};

// Parameters named "layer<l>.<part>" and "final_norm"; weights ~ N(0,
// stddev), norm gains 1.
template <typename T>
DecoderIds RegisterDecoder(ParameterSet<T>& params, const DecoderConfig& config,
                           double stddev, std::mt19937_64& rng);

template <typename T>
DecoderIds FindDecoder(const ParameterSet<T>& params, const DecoderConfig& config);

// Pre-norm residual blocks (RMSNorm, rotary attention, SwiGLU) and a final
// RMSNorm. Throws NumericError naming the layer on non-finite output.
template <typename T>
typename Tape<T>::Var DecoderForward(Tape<T>& tape, typename Tape<T>::Var x,
                                     const AttentionMask& mask,
                                     const std::vector<int>& positions,
                                     const DecoderConfig& config,
                                     const DecoderIds& ids);

}  // namespace stgr::nn

#endif  // STGR_NN_DECODER_H_
