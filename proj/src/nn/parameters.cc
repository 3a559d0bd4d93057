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

#include "stgr/nn/parameters.h"

#include <bit>
#include <cstring>

#include "stgr/common/digest.h"

namespace stgr::nn {

template <typename T>
int ParameterSet<T>::Add(const std::string& name, int rows, int cols) {
  if (rows < 0 || cols < 0) throw UsageError("negative shape for parameter " + name);
  if (!by_name_.emplace(name, size()).second) {
    throw UsageError("duplicate parameter " + name);
  }
  names_.push_back(name);
  values_.emplace_back(rows, cols);
  return size() - 1;
}

template <typename T>
int ParameterSet<T>::AddNormal(const std::string& name, int rows, int cols,
                               double stddev, std::mt19937_64& rng) {
  const int id = Add(name, rows, cols);
  std::normal_distribution<double> dist(0.0, stddev);
  for (auto& v : values_[id].values()) v = static_cast<T>(dist(rng));
  return id;
}

template <typename T>
int ParameterSet<T>::AddConstant(const std::string& name, int rows, int cols,
                                 T value) {
  const int id = Add(name, rows, cols);
  values_[id].Fill(value);
  return id;
}

template <typename T>
int ParameterSet<T>::Find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

template <typename T>
int ParameterSet<T>::Id(const std::string& name) const {
  const int id = Find(name);
  if (id < 0) throw UsageError("unknown parameter " + name);
  return id;
}

template <typename T>
std::size_t ParameterSet<T>::NumScalars() const {
  std::size_t n = 0;
  for (const auto& v : values_) n += v.size();
  return n;
}

template <typename T>
std::string ParameterSet<T>::Digest() const {
  static_assert(std::endian::native == std::endian::little);
  Sha1Builder sha;
  for (int i = 0; i < size(); ++i) {
    sha.Update(names_[i]);
    const std::int32_t shape[2] = {values_[i].rows(), values_[i].cols()};
    sha.Update(shape, sizeof(shape));
    sha.Update(values_[i].data(), values_[i].size() * sizeof(T));
  }
  return sha.HexDigest();
}

template <typename T>
Gradients<T>::Gradients(const ParameterSet<T>& params) {
  for (int i = 0; i < params.size(); ++i) {
    shapes_.emplace_back(params.value(i).rows(), params.value(i).cols());
  }
  grads_.resize(shapes_.size());
}

template <typename T>
Matrix<T>& Gradients<T>::Get(int id) {
  if (grads_[id].empty() && shapes_[id].first * shapes_[id].second > 0) {
    grads_[id] = Matrix<T>(shapes_[id].first, shapes_[id].second);
  }
  return grads_[id];
}

template <typename T>
void Gradients<T>::Clear() {
  for (auto& g : grads_) g = Matrix<T>();
}

template <typename T>
void Gradients<T>::Scale(T s) {
  for (auto& g : grads_) {
    for (auto& v : g.values()) v *= s;
  }
}

template <typename T>
void Gradients<T>::Accumulate(const Gradients& other) {
  CheckShape(other.size() == size(), "gradient sets differ in size");
  for (int i = 0; i < size(); ++i) {
    if (!other.touched(i)) continue;
    Matrix<T>& g = Get(i);
    const Matrix<T>& o = other.grads_[i];
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += o[k];
  }
}

template <typename T>
double Gradients<T>::SquaredNorm() const {
  double s = 0.0;
  for (const auto& g : grads_) {
    for (T v : g.values()) s += static_cast<double>(v) * v;
  }
  return s;
}

template class ParameterSet<float>;
template class ParameterSet<double>;
template class Gradients<float>;
template class Gradients<double>;

}  // namespace stgr::nn
