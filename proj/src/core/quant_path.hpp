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

#include <vector>

#include "muxq/method.hpp"
#include "muxq/quant.hpp"
#include "muxq/tensor.hpp"

namespace muxq::internal {

// Weight operand quantized once per GEMM call, so that the body and aux
// products (or the naive product) all see the same weight codes.
class PreparedWeight {
 public:
  PreparedWeight(const DenseMatrix& w, const MethodConfig& cfg);

  PreparedWeight GatherRows(const std::vector<std::size_t>& rows) const;

  // x * w under cfg: fake mode multiplies (fake-quantized) real operands with
  // Gemm, int mode runs IntGemm on the codes.
  DenseMatrix Multiply(const DenseMatrix& x, const MethodConfig& cfg) const;

 private:
  PreparedWeight() = default;

  ComputeMode mode_ = ComputeMode::kFake;
  DenseMatrix real_;
  QuantizedTensor codes_;
};

// a + factor * b elementwise in float; factor == 1 is a plain add.
DenseMatrix AddScaled(const DenseMatrix& a, const DenseMatrix& b, float factor);

void CheckOperands(const DenseMatrix& x, const DenseMatrix& w);

}  // namespace muxq::internal
