// Copyright 2026 The MUXQ Toolkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace muxq {

// Activations are tokens x channels; weights are in_features x out_features.
enum class Layout : unsigned char { kActivation = 0, kWeight = 1 };

const char* LayoutName(Layout layout);

// Row-major 2-D float tensor. Immutable after construction and guaranteed to
// hold only finite values.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  // Throws kShape if data.size() != rows * cols, kNonFinite on NaN/Inf.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<float> data,
              Layout layout = Layout::kActivation);

  static DenseMatrix Zeros(std::size_t rows, std::size_t cols,
                           Layout layout = Layout::kActivation);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  Layout layout() const noexcept { return layout_; }
  bool empty() const noexcept { return data_.empty(); }

  float at(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  std::span<const float> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const float> values() const noexcept { return data_; }

  // Same values, different layout tag.
  DenseMatrix WithLayout(Layout layout) const;

  // Bit-exact comparison including layout.
  bool BitEqual(const DenseMatrix& other) const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Layout layout_ = Layout::kActivation;
  std::vector<float> data_;
};

// Columns listed in `indices`, in order, as a rows x indices.size() matrix.
DenseMatrix GatherColumns(const DenseMatrix& m,
                          std::span<const std::size_t> indices);

// Rows listed in `indices`, in order.
DenseMatrix GatherRows(const DenseMatrix& m,
                       std::span<const std::size_t> indices);

}  // namespace muxq
