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
#include <vector>

#include "muxq/tensor.hpp"

namespace muxq {

// Counter-based normal generator.
//
// Algorithm (fixed; ports must reproduce it to get identical tensors):
//   key        = SplitMix64Mix(seed ^ (stream * 0xD1B54A32D192ED03))
//   bits(i)    = SplitMix64Mix(key + (i + 1) * 0x9E3779B97F4A7C15)
//   uniform(i) = ((bits(i) >> 11) + 1) * 2^-53            in (0, 1]
//   pair p     : r = sqrt(-2 ln uniform(2p)), t = 2 pi uniform(2p + 1)
//   normal(2p) = r cos t,  normal(2p + 1) = r sin t       (Box-Muller)
// SplitMix64Mix is the finalizer of Steele/Lea/Flood SplitMix64. Values are
// produced in double and rounded to float at the call site.
class CounterNormal {
 public:
  CounterNormal(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t Bits(std::uint64_t counter) const noexcept;
  double Uniform(std::uint64_t counter) const noexcept;
  double Normal(std::uint64_t index) const noexcept;

 private:
  std::uint64_t key_;
};

std::uint64_t SplitMix64Mix(std::uint64_t z) noexcept;

struct SyntheticSpec {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double base_std = 1.0;
  std::vector<std::size_t> outlier_channels;
  double outlier_gain = 1.0;
  std::uint64_t seed = 0;
  Layout layout = Layout::kActivation;
};

// Element (r, c) = float(base_std * normal(r * cols + c)) on stream 0, then
// multiplied in float by float(outlier_gain) when c is a planted channel.
DenseMatrix GenerateSynthetic(const SyntheticSpec& spec);

}  // namespace muxq
