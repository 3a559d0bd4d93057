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

#ifndef STGR_NN_TAPE_H_
#define STGR_NN_TAPE_H_

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "stgr/nn/mask.h"
#include "stgr/nn/matrix.h"
#include "stgr/nn/parameters.h"

namespace stgr::nn {

// Reverse-mode autodiff over coarse-grained ops. One tape per forward pass;
// parameters are read-only, their gradients land in the Gradients buffer
// handed to the constructor. Without a buffer the tape records no backward
// closures (inference).
template <typename T>
class Tape {
 public:
  using Var = int;

  Tape(const ParameterSet<T>& params, Gradients<T>* grads);
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool recording() const { return grads_ != nullptr; }
  const Matrix<T>& value(Var v) const { return nodes_[v].value; }
  // Empty when no gradient reached the node.
  const Matrix<T>& grad(Var v) const { return nodes_[v].grad; }
  const ParameterSet<T>& params() const { return params_; }

  // Constant input.
  Var Input(Matrix<T> m);
  // Differentiable free input; its gradient is readable via grad().
  Var Leaf(Matrix<T> m);
  // Copy of a parameter tensor.
  Var Param(int id);

  // x[n x k] * W[k x m].
  Var Linear(Var x, int weight);
  // Looks up `per_token` rows of `table` per output row and concatenates
  // them: out is (rows.size() / per_token) x (per_token * table.cols).
  Var Gather(int table, const std::vector<int>& rows, int per_token);
  // out row i = sources[layout[i].first] row layout[i].second.
  Var Arrange(const std::vector<Var>& sources,
              const std::vector<std::pair<int, int>>& layout);
  Var Add(Var a, Var b);
  // Softmax(logits)-weighted sum of same-shaped parts; logits is 1 x k.
  Var Mix(const std::vector<Var>& parts, Var logits);
  Var RmsNorm(Var x, int gain, double eps);
  // Multi-head attention with rotary positions applied to q and k. Keys a
  // query may not see take no part in its softmax at all.
  Var Attention(Var q, Var k, Var v, int heads, const std::vector<int>& positions,
                const AttentionMask& mask, double rope_base);
  // silu(a) * b.
  Var SwiGlu(Var a, Var b);

  // scale * sum of 1 x 1 inputs.
  Var Sum(const std::vector<Var>& scalars, T scale);
  // scale * sum over rows of -log softmax(logits[r])[targets[r]].
  Var CrossEntropy(Var logits, const std::vector<int>& targets, T scale);
  // n x 1: log softmax(logits[r])[cols[r]].
  Var LogSoftmaxAt(Var logits, const std::vector<int>& cols);
  // Sum over rows of binary cross-entropy of sigmoid(z[r]) against y[r];
  // probabilities clamped at 1e-12 inside the logs.
  Var BceWithLogits(Var z, const std::vector<int>& y);
  // n x 1 cosine similarity of matching rows; a may be 1 x d (broadcast).
  // Throws NumericError on a zero-norm row.
  Var CosineRows(Var a, Var b);
  // -log(sum_pos e^{c/tau} / sum_all e^{c/tau}) over the rows of `cos`.
  Var InfoNce(Var cos, const std::vector<int>& is_positive, T tau);
  // Sum over (pos j, neg k) of -log sigmoid(beta * ((a_j - r_j) - (a_k - r_k))).
  Var Dpo(Var logp_pos, Var logp_neg, const std::vector<T>& ref_pos,
          const std::vector<T>& ref_neg, T beta);

  // Throws NumericError naming `where` when v holds NaN or Inf.
  void CheckFinite(Var v, const std::string& where) const;

  // Seeds d(loss)/d(loss) = 1 and runs the recorded closures in reverse.
  void Backward(Var loss);

 private:
  struct Node {
    Matrix<T> value;
    Matrix<T> grad;
    bool needs_grad = false;
    std::function<void()> backward;
  };

  Var Push(Matrix<T> value, bool needs_grad);
  bool Needs(Var v) const { return nodes_[v].needs_grad; }
  bool AnyNeeds(std::initializer_list<Var> vars) const;
  Matrix<T>& GradOf(Var v);
  void Record(Var out, std::function<void()> fn);

  const ParameterSet<T>& params_;
  Gradients<T>* grads_;
  std::vector<Node> nodes_;
};

}  // namespace stgr::nn

#endif  // STGR_NN_TAPE_H_
