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

#include "muxq/method.hpp"
#include "muxq/outlier.hpp"
#include "muxq/tensor.hpp"

namespace muxq {

// Body/Aux split of an activation matrix.
//
// Outlier columns of the source are scaled by 2^-e (an exact exponent
// decrement) to form `body`; `aux` holds a compacted copy of those scaled
// columns, so that for each outlier channel
//   x = body + (2^e - 1) * aux.
// Non-outlier columns of `body` equal the source bit for bit.
struct MuxqDecomposition {
  DenseMatrix body;
  DenseMatrix aux;  // rows x outliers.size()
  OutlierSet outliers;
  int exp_factor = kDefaultExpFactor;

  // 2^e - 1
  float AuxMultiplier() const noexcept;
};

// Throws kConfig when e is outside [0, 8] or an index is out of range.
MuxqDecomposition Decompose(const DenseMatrix& x, const OutlierSet& outliers,
                            int exp_factor);

// body + (2^e - 1) * aux in float on the outlier columns. Bit-exact for
// e <= 1; within 2 ulp otherwise.
DenseMatrix Reconstruct(const MuxqDecomposition& d);

// Two-GEMM quantized forward:
//   1. detect outliers of x at cfg.theta, 2. decompose at cfg.exp_factor,
//   3. quantize body and w, 4. quantize aux with its own scales,
//   5. Y_body = body * w, Y_aux = aux * w[outlier rows],
//   6. Y = Y_body + (2^e - 1) * Y_aux   (float, after dequantization).
// With no outliers or e = 0 the aux path is skipped and the result is
// bit-identical to NaiveGemm.
DenseMatrix MuxqGemm(const DenseMatrix& x, const DenseMatrix& w,
                     const MethodConfig& cfg);

}  // namespace muxq
