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

#include "muxq/decompose.hpp"

#include <cmath>
#include <string>

#include "muxq/error.hpp"
#include "quant_path.hpp"

namespace muxq {

float MuxqDecomposition::AuxMultiplier() const noexcept {
  return static_cast<float>((1u << exp_factor) - 1u);
}

MuxqDecomposition Decompose(const DenseMatrix& x, const OutlierSet& outliers,
                            int exp_factor) {
  if (exp_factor < 0 || exp_factor > kMaxExpFactor) {
    Fail(ErrorCode::kConfig, "exp_factor must be in [0, 8], got " +
                                 std::to_string(exp_factor));
  }
  ValidateOutlierSet(outliers, x.cols());

  const float shift = std::ldexp(1.0f, -exp_factor);
  std::vector<float> body(x.values().begin(), x.values().end());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c : outliers.indices) body[r * x.cols() + c] *= shift;
  }

  MuxqDecomposition d;
  d.body = DenseMatrix(x.rows(), x.cols(), std::move(body), x.layout());
  d.aux = GatherColumns(d.body, outliers.indices);
  d.outliers = outliers;
  d.exp_factor = exp_factor;
  return d;
}

DenseMatrix Reconstruct(const MuxqDecomposition& d) {
  const float mult = d.AuxMultiplier();
  if (mult == 0.0f) return d.body;
  const std::size_t cols = d.body.cols();
  const std::size_t k = d.outliers.size();
  std::vector<float> out(d.body.values().begin(), d.body.values().end());
  for (std::size_t r = 0; r < d.body.rows(); ++r) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t c = d.outliers.indices[j];
      const float scaled = mult * d.aux.at(r, j);
      out[r * cols + c] += scaled;
    }
  }
  return DenseMatrix(d.body.rows(), cols, std::move(out), d.body.layout());
}

DenseMatrix MuxqGemm(const DenseMatrix& x, const DenseMatrix& w,
                     const MethodConfig& cfg) {
  ValidateMethodConfig(cfg);
  internal::CheckOperands(x, w);
  const internal::PreparedWeight weight(w, cfg);

  const OutlierSet outliers = DetectOutlierChannels(x, cfg.theta);
  if (outliers.empty() || cfg.exp_factor == 0) return weight.Multiply(x, cfg);

  const MuxqDecomposition d = Decompose(x, outliers, cfg.exp_factor);
  const DenseMatrix y_body = weight.Multiply(d.body, cfg);
  const DenseMatrix y_aux =
      weight.GatherRows(outliers.indices).Multiply(d.aux, cfg);
  return internal::AddScaled(y_body, y_aux, d.AuxMultiplier());
}

}  // namespace muxq
