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

#include "muxq/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "muxq/error.hpp"

namespace muxq {

std::uint64_t SplitMix64Mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterNormal::CounterNormal(std::uint64_t seed, std::uint64_t stream)
    : key_(SplitMix64Mix(seed ^ (stream * 0xD1B54A32D192ED03ULL))) {}

std::uint64_t CounterNormal::Bits(std::uint64_t counter) const noexcept {
  return SplitMix64Mix(key_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

double CounterNormal::Uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>((Bits(counter) >> 11) + 1) * 0x1.0p-53;
}

double CounterNormal::Normal(std::uint64_t index) const noexcept {
  const std::uint64_t pair = index / 2;
  const double radius = std::sqrt(-2.0 * std::log(Uniform(2 * pair)));
  const double angle = 2.0 * std::numbers::pi * Uniform(2 * pair + 1);
  return (index % 2 == 0) ? radius * std::cos(angle) : radius * std::sin(angle);
}

DenseMatrix GenerateSynthetic(const SyntheticSpec& spec) {
  if (!(spec.base_std > 0.0) || !std::isfinite(spec.base_std)) {
    Fail(ErrorCode::kConfig, "base_std must be positive and finite");
  }
  if (!(spec.outlier_gain >= 1.0) || !std::isfinite(spec.outlier_gain)) {
    Fail(ErrorCode::kConfig, "outlier_gain must be >= 1");
  }
  std::vector<bool> planted(spec.cols, false);
  for (std::size_t c : spec.outlier_channels) {
    if (c >= spec.cols) {
      Fail(ErrorCode::kConfig, "outlier channel " + std::to_string(c) +
                                   " out of range for " +
                                   std::to_string(spec.cols) + " columns");
    }
    planted[c] = true;
  }

  const CounterNormal rng(spec.seed, 0);
  const float gain = static_cast<float>(spec.outlier_gain);
  std::vector<float> data(spec.rows * spec.cols);
  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t c = 0; c < spec.cols; ++c) {
      const std::size_t i = r * spec.cols + c;
      float v = static_cast<float>(spec.base_std * rng.Normal(i));
      if (planted[c]) v *= gain;
      data[i] = v;
    }
  }
  return DenseMatrix(spec.rows, spec.cols, std::move(data), spec.layout);
}

}  // namespace muxq
