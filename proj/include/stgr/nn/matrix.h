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

#ifndef STGR_NN_MATRIX_H_
#define STGR_NN_MATRIX_H_

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "stgr/common/error.h"

namespace stgr::nn {

// Dense row-major matrix; vectors are 1 x n.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  T* row(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }
  const T* row(int r) const {
    return data_.data() + static_cast<std::size_t>(r) * cols_;
  }
  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  T operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  T& operator[](std::size_t i) { return data_[i]; }
  T operator[](std::size_t i) const { return data_[i]; }

  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

  void Fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  bool AllFinite() const {
    for (T v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  template <typename U>
  Matrix<U> Cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out[i] = static_cast<U>(data_[i]);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

inline void CheckShape(bool ok, const std::string& what) {
  if (!ok) throw UsageError("shape mismatch: " + what);
}

}  // namespace stgr::nn

#endif  // STGR_NN_MATRIX_H_
