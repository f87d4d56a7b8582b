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

#include <optional>
#include <string>

#include "muxq/outlier.hpp"
#include "muxq/quant.hpp"
#include "muxq/tensor.hpp"

namespace muxq {

enum class Method { kFp, kNaive, kMuxq, kMixedPrecision };

// kFake multiplies dequantized real operands; kInt runs IntGemm on the codes.
enum class ComputeMode { kFake, kInt };

const char* MethodName(Method m);
const char* ComputeModeName(ComputeMode m);

inline constexpr int kDefaultExpFactor = 2;
inline constexpr int kMaxExpFactor = 8;

// Configuration shared by every quantized GEMM. A disengaged bit width means
// that operand is left in full precision.
struct MethodConfig {
  Method method = Method::kNaive;
  std::optional<int> act_bits = 8;
  std::optional<int> w_bits = 8;
  Granularity act_granularity = Granularity::kPerTensor;
  Granularity w_granularity = Granularity::kPerTensor;
  double theta = kDefaultTheta;   // muxq, mixed precision
  int exp_factor = kDefaultExpFactor;  // muxq only
  ComputeMode mode = ComputeMode::kFake;
};

// Throws kConfig on out-of-range bits, theta or exp_factor, on a granularity
// that does not fit its operand, and on int mode with an unquantized operand.
void ValidateMethodConfig(const MethodConfig& cfg);

// Quantize x and w per cfg and multiply. With both bit widths disengaged this
// is exactly Gemm(x, w).
DenseMatrix NaiveGemm(const DenseMatrix& x, const DenseMatrix& w,
                      const MethodConfig& cfg);

// Outlier channels of x (and the matching rows of w) are multiplied in full
// precision; the remaining channels go through the naive quantized path with
// the outlier columns zeroed. The two partial outputs are summed in float.
// No outliers: identical to NaiveGemm. Every channel an outlier, or both bit
// widths disengaged: identical to Gemm.
DenseMatrix MixedPrecisionGemm(const DenseMatrix& x, const DenseMatrix& w,
                               const MethodConfig& cfg);

// Dispatches on cfg.method; kFp is Gemm(x, w).
DenseMatrix RunMethod(const DenseMatrix& x, const DenseMatrix& w,
                      const MethodConfig& cfg);

}  // namespace muxq
