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
#include <cstdint>
#include <optional>
#include <vector>

#include "muxq/tensor.hpp"

namespace muxq {

enum class Granularity {
  kPerTensor,
  kPerToken,    // one scale per activation row
  kPerChannel,  // one scale per weight column
};

const char* GranularityName(Granularity g);

inline constexpr int kMinBits = 2;
inline constexpr int kMaxBits = 8;

// Largest representable magnitude at `bits`: 2^(bits-1) - 1.
constexpr std::int32_t MaxLevel(int bits) {
  return (std::int32_t{1} << (bits - 1)) - 1;
}

// Integer codes plus the scales needed to map them back to real values.
struct QuantizedTensor {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Layout layout = Layout::kActivation;
  int bits = 8;
  Granularity granularity = Granularity::kPerTensor;
  std::vector<std::int32_t> q;
  std::vector<float> scales;

  float ScaleAt(std::size_t r, std::size_t c) const noexcept {
    switch (granularity) {
      case Granularity::kPerToken:
        return scales[r];
      case Granularity::kPerChannel:
        return scales[c];
      case Granularity::kPerTensor:
        break;
    }
    return scales[0];
  }
};

// Throws kConfig when bits is outside [2, 8] or the granularity does not
// apply to the matrix layout.
void ValidateQuantConfig(Layout layout, int bits, Granularity g);

// Round half away from zero.
double RoundHalfAway(double v) noexcept;

// Symmetric abs-max quantization. For each group (tensor, row or column):
//   s = max|x| / (2^(bits-1) - 1)       (float division)
//   q = clamp(round_half_away(x / s), -(2^(bits-1) - 1), 2^(bits-1) - 1)
//       with x / s evaluated in double
// A group whose max is zero gets s = 1 and q = 0.
QuantizedTensor QuantizeAbsMax(const DenseMatrix& m, int bits, Granularity g);

// Element (r, c) = float(q) * scale, in float.
DenseMatrix Dequantize(const QuantizedTensor& t);

DenseMatrix FakeQuantize(const DenseMatrix& m, int bits, Granularity g);

// Keeps the rows listed in `indices` (and their scales when per-token).
QuantizedTensor GatherQuantizedRows(const QuantizedTensor& t,
                                    const std::vector<std::size_t>& indices);

// Integer GEMM with 64-bit accumulators summed in ascending k. Output element
//   float(double(acc) * double(s_a(i)) * double(s_w(j))).
// `a` must be activation-layout (per-tensor or per-token), `w` weight-layout
// (per-tensor or per-channel).
DenseMatrix IntGemm(const QuantizedTensor& a, const QuantizedTensor& w);

}  // namespace muxq
