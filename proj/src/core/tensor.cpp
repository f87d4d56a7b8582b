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

#include "muxq/tensor.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "muxq/error.hpp"

namespace muxq {

const char* LayoutName(Layout layout) {
  return layout == Layout::kWeight ? "weight" : "activation";
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<float> data, Layout layout)
    : rows_(rows), cols_(cols), layout_(layout), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    Fail(ErrorCode::kShape, "matrix data length " +
                                std::to_string(data_.size()) + " != " +
                                std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      Fail(ErrorCode::kNonFinite,
           "non-finite value at flat index " + std::to_string(i));
    }
  }
}

DenseMatrix DenseMatrix::Zeros(std::size_t rows, std::size_t cols,
                               Layout layout) {
  return DenseMatrix(rows, cols, std::vector<float>(rows * cols, 0.0f), layout);
}

DenseMatrix DenseMatrix::WithLayout(Layout layout) const {
  DenseMatrix out = *this;
  out.layout_ = layout;
  return out;
}

bool DenseMatrix::BitEqual(const DenseMatrix& other) const noexcept {
  return rows_ == other.rows_ && cols_ == other.cols_ &&
         layout_ == other.layout_ &&
         (data_.empty() ||
          std::memcmp(data_.data(), other.data_.data(),
                      data_.size() * sizeof(float)) == 0);
}

DenseMatrix GatherColumns(const DenseMatrix& m,
                          std::span<const std::size_t> indices) {
  for (std::size_t c : indices) {
    if (c >= m.cols()) {
      Fail(ErrorCode::kShape, "column index " + std::to_string(c) +
                                  " out of range for " +
                                  std::to_string(m.cols()) + " columns");
    }
  }
  std::vector<float> out;
  out.reserve(m.rows() * indices.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c : indices) out.push_back(m.at(r, c));
  }
  return DenseMatrix(m.rows(), indices.size(), std::move(out), m.layout());
}

DenseMatrix GatherRows(const DenseMatrix& m,
                       std::span<const std::size_t> indices) {
  std::vector<float> out;
  out.reserve(indices.size() * m.cols());
  for (std::size_t r : indices) {
    if (r >= m.rows()) {
      Fail(ErrorCode::kShape, "row index " + std::to_string(r) +
                                  " out of range for " +
                                  std::to_string(m.rows()) + " rows");
    }
    auto row = m.row(r);
    out.insert(out.end(), row.begin(), row.end());
  }
  return DenseMatrix(indices.size(), m.cols(), std::move(out), m.layout());
}

}  // namespace muxq
