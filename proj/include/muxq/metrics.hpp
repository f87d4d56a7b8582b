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

#include <span>
#include <string>
#include <vector>

#include "muxq/tensor.hpp"

namespace muxq {

struct ErrorStats {
  double rel_frobenius = 0.0;  // ||ref - cand||_F / ||ref||_F, 0/0 -> 0
  double max_abs_err = 0.0;
  double sqnr_db = 0.0;        // +inf when the error is zero
};

// Sums run sequentially in row-major order in double.
ErrorStats ComputeErrorStats(const DenseMatrix& reference,
                             const DenseMatrix& candidate);

struct LogitStats {
  double mean_kl = 0.0;         // mean over rows of KL(softmax(ref) || softmax(cand)), nats
  double top1_agreement = 1.0;  // fraction of rows with equal argmax
};

// Rows are positions, columns are vocabulary entries.
LogitStats CompareLogits(const DenseMatrix& reference,
                         const DenseMatrix& candidate);

// Per-channel max |x(r, c)|.
std::vector<float> ChannelMaxProfile(const DenseMatrix& x);

// "channel,max_abs" header then one line per channel, values in shortest
// round-trip form.
std::string ProfileCsv(std::span<const float> profile);

}  // namespace muxq
