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

#ifndef STGR_NN_PARAMETERS_H_
#define STGR_NN_PARAMETERS_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "stgr/nn/matrix.h"

namespace stgr::nn {

// Named, ordered parameter tensors. The order of registration is the order
// of serialization and of every reduction over parameters.
template <typename T>
class ParameterSet {
 public:
  // Registers a zero-filled tensor and returns its id. Throws UsageError on
  // a duplicate name.
  int Add(const std::string& name, int rows, int cols);
  int AddNormal(const std::string& name, int rows, int cols, double stddev,
                std::mt19937_64& rng);
  int AddConstant(const std::string& name, int rows, int cols, T value);

  int size() const { return static_cast<int>(values_.size()); }
  // -1 when absent.
  int Find(const std::string& name) const;
  // Throws UsageError when absent.
  int Id(const std::string& name) const;
  const std::string& name(int id) const { return names_[id]; }
  const std::vector<std::string>& names() const { return names_; }

  Matrix<T>& value(int id) { return values_[id]; }
  const Matrix<T>& value(int id) const { return values_[id]; }

  std::size_t NumScalars() const;

  template <typename U>
  ParameterSet<U> Cast() const {
    ParameterSet<U> out;
    for (int i = 0; i < size(); ++i) {
      out.Add(names_[i], values_[i].rows(), values_[i].cols());
      out.value(i) = values_[i].template Cast<U>();
    }
    return out;
  }

  // SHA-1 over names, shapes and raw little-endian values.
  std::string Digest() const;

 private:
  std::vector<std::string> names_;
  std::vector<Matrix<T>> values_;
  std::map<std::string, int> by_name_;
};

// Gradient buffers shaped like a parameter set; allocated on first touch so
// untouched tensors cost nothing.
template <typename T>
class Gradients {
 public:
  Gradients() = default;
  explicit Gradients(const ParameterSet<T>& params);

  int size() const { return static_cast<int>(grads_.size()); }
  bool touched(int id) const { return !grads_[id].empty(); }
  // Zero-initialized on first access.
  Matrix<T>& Get(int id);
  const Matrix<T>& Peek(int id) const { return grads_[id]; }
  T At(int id, std::size_t i) const { return touched(id) ? grads_[id][i] : T(0); }

  void Clear();
  void Scale(T s);
  // this += other, tensor by tensor in id order.
  void Accumulate(const Gradients& other);
  double SquaredNorm() const;

 private:
  std::vector<std::pair<int, int>> shapes_;
  std::vector<Matrix<T>> grads_;
};

}  // namespace stgr::nn

#endif  // STGR_NN_PARAMETERS_H_
