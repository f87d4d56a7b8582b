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
#include <vector>

#include "muxq/tensor.hpp"

namespace muxq {

inline constexpr double kDefaultTheta = 6.0;

// Channels (columns) holding at least one element with |x| > theta.
struct OutlierSet {
  std::vector<std::size_t> indices;  // strictly increasing
  double theta = kDefaultTheta;

  bool empty() const noexcept { return indices.empty(); }
  std::size_t size() const noexcept { return indices.size(); }
};

// Strict comparison: |x| == theta is not an outlier. Throws kConfig unless
// theta > 0 (NaN rejected).
OutlierSet DetectOutlierChannels(const DenseMatrix& x,
                                 double theta = kDefaultTheta);

// Throws kConfig when indices are not strictly increasing or not < cols.
void ValidateOutlierSet(const OutlierSet& set, std::size_t cols);

}  // namespace muxq
