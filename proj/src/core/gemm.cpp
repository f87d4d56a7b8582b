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

#include "muxq/gemm.hpp"

#include <string>
#include <vector>

#include "muxq/error.hpp"
#include "muxq/parallel.hpp"

namespace muxq {

DenseMatrix Gemm(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    Fail(ErrorCode::kShape, "GEMM inner dimensions differ: " +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()));
  }
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  std::vector<float> out(m * n);
  const auto bv = b.values();
  ParallelRows(m, k * n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> acc(n);
    for (std::size_t i = begin; i < end; ++i) {
      std::fill(acc.begin(), acc.end(), 0.0);
      const auto arow = a.row(i);
      for (std::size_t p = 0; p < k; ++p) {
        const double av = arow[p];
        const float* brow = bv.data() + p * n;
        for (std::size_t j = 0; j < n; ++j) {
          acc[j] += av * static_cast<double>(brow[j]);
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        out[i * n + j] = static_cast<float>(acc[j]);
      }
    }
  });
  return DenseMatrix(m, n, std::move(out), Layout::kActivation);
}

}  // namespace muxq
