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

#include "muxq/quant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "muxq/error.hpp"
#include "muxq/parallel.hpp"

namespace muxq {

const char* GranularityName(Granularity g) {
  switch (g) {
    case Granularity::kPerTensor:
      return "tensor";
    case Granularity::kPerToken:
      return "token";
    case Granularity::kPerChannel:
      return "channel";
  }
  return "?";
}

void ValidateQuantConfig(Layout layout, int bits, Granularity g) {
  if (bits < kMinBits || bits > kMaxBits) {
    Fail(ErrorCode::kConfig, "bits must be in [2, 8], got " +
                                 std::to_string(bits));
  }
  if (g == Granularity::kPerToken && layout != Layout::kActivation) {
    Fail(ErrorCode::kConfig, "per-token granularity needs an activation matrix");
  }
  if (g == Granularity::kPerChannel && layout != Layout::kWeight) {
    Fail(ErrorCode::kConfig, "per-channel granularity needs a weight matrix");
  }
}

double RoundHalfAway(double v) noexcept { return std::round(v); }

namespace {

float ScaleFor(float max_abs, std::int32_t levels) {
  return max_abs == 0.0f ? 1.0f : max_abs / static_cast<float>(levels);
}

// Quotient in double: exact enough to decide ties correctly.
std::int32_t QuantizeValue(float x, float scale, std::int32_t levels) {
  const double r =
      RoundHalfAway(static_cast<double>(x) / static_cast<double>(scale));
  return std::clamp(static_cast<std::int32_t>(r), -levels, levels);
}

}  // namespace

QuantizedTensor QuantizeAbsMax(const DenseMatrix& m, int bits, Granularity g) {
  ValidateQuantConfig(m.layout(), bits, g);
  const std::int32_t levels = MaxLevel(bits);
  QuantizedTensor t;
  t.rows = m.rows();
  t.cols = m.cols();
  t.layout = m.layout();
  t.bits = bits;
  t.granularity = g;
  t.q.resize(m.size());

  switch (g) {
    case Granularity::kPerTensor: {
      float max_abs = 0.0f;
      for (float v : m.values()) max_abs = std::max(max_abs, std::fabs(v));
      t.scales.assign(1, ScaleFor(max_abs, levels));
      break;
    }
    case Granularity::kPerToken: {
      t.scales.resize(m.rows());
      for (std::size_t r = 0; r < m.rows(); ++r) {
        float max_abs = 0.0f;
        for (float v : m.row(r)) max_abs = std::max(max_abs, std::fabs(v));
        t.scales[r] = ScaleFor(max_abs, levels);
      }
      break;
    }
    case Granularity::kPerChannel: {
      std::vector<float> max_abs(m.cols(), 0.0f);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        for (std::size_t c = 0; c < m.cols(); ++c) {
          max_abs[c] = std::max(max_abs[c], std::fabs(row[c]));
        }
      }
      t.scales.resize(m.cols());
      for (std::size_t c = 0; c < m.cols(); ++c) {
        t.scales[c] = ScaleFor(max_abs[c], levels);
      }
      break;
    }
  }

  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      t.q[r * m.cols() + c] = QuantizeValue(row[c], t.ScaleAt(r, c), levels);
    }
  }
  return t;
}

DenseMatrix Dequantize(const QuantizedTensor& t) {
  std::vector<float> out(t.q.size());
  for (std::size_t r = 0; r < t.rows; ++r) {
    for (std::size_t c = 0; c < t.cols; ++c) {
      const std::size_t i = r * t.cols + c;
      out[i] = static_cast<float>(t.q[i]) * t.ScaleAt(r, c);
    }
  }
  return DenseMatrix(t.rows, t.cols, std::move(out), t.layout);
}

DenseMatrix FakeQuantize(const DenseMatrix& m, int bits, Granularity g) {
  return Dequantize(QuantizeAbsMax(m, bits, g));
}

QuantizedTensor GatherQuantizedRows(const QuantizedTensor& t,
                                    const std::vector<std::size_t>& indices) {
  QuantizedTensor out;
  out.rows = indices.size();
  out.cols = t.cols;
  out.layout = t.layout;
  out.bits = t.bits;
  out.granularity = t.granularity;
  out.q.reserve(indices.size() * t.cols);
  for (std::size_t r : indices) {
    if (r >= t.rows) {
      Fail(ErrorCode::kShape, "row index " + std::to_string(r) +
                                  " out of range for " +
                                  std::to_string(t.rows) + " rows");
    }
    out.q.insert(out.q.end(), t.q.begin() + r * t.cols,
                 t.q.begin() + (r + 1) * t.cols);
    if (t.granularity == Granularity::kPerToken) out.scales.push_back(t.scales[r]);
  }
  if (t.granularity != Granularity::kPerToken) out.scales = t.scales;
  return out;
}

DenseMatrix IntGemm(const QuantizedTensor& a, const QuantizedTensor& w) {
  if (a.cols != w.rows) {
    Fail(ErrorCode::kShape, "integer GEMM inner dimensions differ: " +
                                std::to_string(a.cols) + " vs " +
                                std::to_string(w.rows));
  }
  if (a.layout != Layout::kActivation ||
      a.granularity == Granularity::kPerChannel) {
    Fail(ErrorCode::kConfig,
         "integer GEMM needs a per-tensor or per-token activation operand");
  }
  if (w.layout != Layout::kWeight || w.granularity == Granularity::kPerToken) {
    Fail(ErrorCode::kConfig,
         "integer GEMM needs a per-tensor or per-channel weight operand");
  }
  const std::size_t m = a.rows, k = a.cols, n = w.cols;
  std::vector<float> out(m * n);
  ParallelRows(m, k * n, [&](std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> acc(n);
    for (std::size_t i = begin; i < end; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t p = 0; p < k; ++p) {
        const std::int64_t av = a.q[i * k + p];
        if (av == 0) continue;
        const std::int32_t* wrow = w.q.data() + p * n;
        for (std::size_t j = 0; j < n; ++j) acc[j] += av * wrow[j];
      }
      const double sa = a.ScaleAt(i, 0);
      for (std::size_t j = 0; j < n; ++j) {
        const double sw = w.ScaleAt(0, j);
        out[i * n + j] = static_cast<float>(static_cast<double>(acc[j]) * sa * sw);
      }
    }
  });
  return DenseMatrix(m, n, std::move(out), Layout::kActivation);
}

}  // namespace muxq
