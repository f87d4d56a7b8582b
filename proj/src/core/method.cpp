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

#include "muxq/method.hpp"

#include <cmath>
#include <string>

#include "muxq/decompose.hpp"
#include "muxq/error.hpp"
#include "muxq/gemm.hpp"
#include "quant_path.hpp"

namespace muxq {

const char* MethodName(Method m) {
  switch (m) {
    case Method::kFp:
      return "fp";
    case Method::kNaive:
      return "naive";
    case Method::kMuxq:
      return "muxq";
    case Method::kMixedPrecision:
      return "mixed";
  }
  return "?";
}

const char* ComputeModeName(ComputeMode m) {
  return m == ComputeMode::kInt ? "int" : "fake";
}

void ValidateMethodConfig(const MethodConfig& cfg) {
  if (cfg.act_bits) {
    ValidateQuantConfig(Layout::kActivation, *cfg.act_bits, cfg.act_granularity);
  }
  if (cfg.w_bits) {
    ValidateQuantConfig(Layout::kWeight, *cfg.w_bits, cfg.w_granularity);
  }
  if (cfg.method == Method::kMuxq || cfg.method == Method::kMixedPrecision) {
    if (!(cfg.theta > 0.0)) {
      Fail(ErrorCode::kConfig, "theta must be positive");
    }
  }
  if (cfg.method == Method::kMuxq &&
      (cfg.exp_factor < 0 || cfg.exp_factor > kMaxExpFactor)) {
    Fail(ErrorCode::kConfig, "exp_factor must be in [0, 8], got " +
                                 std::to_string(cfg.exp_factor));
  }
  if (cfg.method != Method::kFp && cfg.mode == ComputeMode::kInt &&
      (!cfg.act_bits || !cfg.w_bits)) {
    Fail(ErrorCode::kConfig, "int mode needs finite activation and weight bits");
  }
}

namespace internal {

void CheckOperands(const DenseMatrix& x, const DenseMatrix& w) {
  if (x.layout() != Layout::kActivation) {
    Fail(ErrorCode::kConfig, "left GEMM operand must be an activation matrix");
  }
  if (w.layout() != Layout::kWeight) {
    Fail(ErrorCode::kConfig, "right GEMM operand must be a weight matrix");
  }
  if (x.cols() != w.rows()) {
    Fail(ErrorCode::kShape, "activation has " + std::to_string(x.cols()) +
                                " channels but weight has " +
                                std::to_string(w.rows()) + " input features");
  }
}

PreparedWeight::PreparedWeight(const DenseMatrix& w, const MethodConfig& cfg)
    : mode_(cfg.mode) {
  if (mode_ == ComputeMode::kInt) {
    codes_ = QuantizeAbsMax(w, *cfg.w_bits, cfg.w_granularity);
  } else {
    real_ = cfg.w_bits ? FakeQuantize(w, *cfg.w_bits, cfg.w_granularity) : w;
  }
}

PreparedWeight PreparedWeight::GatherRows(
    const std::vector<std::size_t>& rows) const {
  PreparedWeight out;
  out.mode_ = mode_;
  if (mode_ == ComputeMode::kInt) {
    out.codes_ = GatherQuantizedRows(codes_, rows);
  } else {
    out.real_ = muxq::GatherRows(real_, rows);
  }
  return out;
}

DenseMatrix PreparedWeight::Multiply(const DenseMatrix& x,
                                     const MethodConfig& cfg) const {
  if (mode_ == ComputeMode::kInt) {
    return IntGemm(QuantizeAbsMax(x, *cfg.act_bits, cfg.act_granularity),
                   codes_);
  }
  if (cfg.act_bits) {
    return Gemm(FakeQuantize(x, *cfg.act_bits, cfg.act_granularity), real_);
  }
  return Gemm(x, real_);
}

DenseMatrix AddScaled(const DenseMatrix& a, const DenseMatrix& b, float factor) {
  std::vector<float> out(a.size());
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const float scaled = factor * bv[i];
    out[i] = av[i] + scaled;
  }
  return DenseMatrix(a.rows(), a.cols(), std::move(out), a.layout());
}

}  // namespace internal

DenseMatrix NaiveGemm(const DenseMatrix& x, const DenseMatrix& w,
                      const MethodConfig& cfg) {
  ValidateMethodConfig(cfg);
  internal::CheckOperands(x, w);
  return internal::PreparedWeight(w, cfg).Multiply(x, cfg);
}

DenseMatrix MixedPrecisionGemm(const DenseMatrix& x, const DenseMatrix& w,
                               const MethodConfig& cfg) {
  ValidateMethodConfig(cfg);
  internal::CheckOperands(x, w);
  if (!cfg.act_bits && !cfg.w_bits) return Gemm(x, w);

  const OutlierSet outliers = DetectOutlierChannels(x, cfg.theta);
  if (outliers.empty()) return internal::PreparedWeight(w, cfg).Multiply(x, cfg);
  if (outliers.size() == x.cols()) return Gemm(x, w);

  std::vector<float> rest(x.values().begin(), x.values().end());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c : outliers.indices) rest[r * x.cols() + c] = 0.0f;
  }
  const DenseMatrix x_rest(x.rows(), x.cols(), std::move(rest), x.layout());
  const DenseMatrix y_quant =
      internal::PreparedWeight(w, cfg).Multiply(x_rest, cfg);
  const DenseMatrix y_full = Gemm(GatherColumns(x, outliers.indices),
                                  GatherRows(w, outliers.indices));
  return internal::AddScaled(y_quant, y_full, 1.0f);
}

DenseMatrix RunMethod(const DenseMatrix& x, const DenseMatrix& w,
                      const MethodConfig& cfg) {
  switch (cfg.method) {
    case Method::kFp:
      internal::CheckOperands(x, w);
      return Gemm(x, w);
    case Method::kNaive:
      return NaiveGemm(x, w, cfg);
    case Method::kMuxq:
      return MuxqGemm(x, w, cfg);
    case Method::kMixedPrecision:
      return MixedPrecisionGemm(x, w, cfg);
  }
  Fail(ErrorCode::kConfig, "unknown method");
}

}  // namespace muxq
