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

#include "muxq/outlier.hpp"

#include <cmath>
#include <string>

#include "muxq/error.hpp"

namespace muxq {

OutlierSet DetectOutlierChannels(const DenseMatrix& x, double theta) {
  if (!(theta > 0.0)) {
    Fail(ErrorCode::kConfig, "outlier threshold must be positive");
  }
  std::vector<bool> hit(x.cols(), false);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) {
      if (std::fabs(static_cast<double>(row[c])) > theta) hit[c] = true;
    }
  }
  OutlierSet set;
  set.theta = theta;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    if (hit[c]) set.indices.push_back(c);
  }
  return set;
}

void ValidateOutlierSet(const OutlierSet& set, std::size_t cols) {
  if (!(set.theta > 0.0)) {
    Fail(ErrorCode::kConfig, "outlier threshold must be positive");
  }
  for (std::size_t i = 0; i < set.indices.size(); ++i) {
    if (set.indices[i] >= cols) {
      Fail(ErrorCode::kConfig, "outlier index " +
                                   std::to_string(set.indices[i]) +
                                   " out of range for " +
                                   std::to_string(cols) + " channels");
    }
    if (i > 0 && set.indices[i] <= set.indices[i - 1]) {
      Fail(ErrorCode::kConfig, "outlier indices must be strictly increasing");
    }
  }
}

}  // namespace muxq
