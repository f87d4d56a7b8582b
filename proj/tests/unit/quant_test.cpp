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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "muxq/gemm.hpp"
#include "muxq/metrics.hpp"
#include "muxq/parallel.hpp"
#include "muxq/quant.hpp"
#include "oracle/reference.hpp"
#include "test_util.hpp"

namespace muxq {
namespace {

using testing_util::CodeOf;

TEST(QuantizeTest, ZeroTensorUsesUnitScale) {
  const QuantizedTensor t =
      QuantizeAbsMax(DenseMatrix::Zeros(2, 2), 8, Granularity::kPerTensor);
  EXPECT_EQ(t.scales, std::vector<float>{1.0f});
  EXPECT_EQ(t.q, (std::vector<std::int32_t>{0, 0, 0, 0}));
  EXPECT_TRUE(Dequantize(t).BitEqual(DenseMatrix::Zeros(2, 2)));
}

// Scalar evaluation with round-half-away: 1/(4/127) = 31.75 -> 32,
// -2/(4/127) = -63.5 -> -64, 0.5/(4/127) = 15.875 -> 16.
TEST(QuantizeTest, PerTensorExample) {
  const DenseMatrix x(2, 2, {1.0f, -2.0f, 0.5f, 4.0f});
  const QuantizedTensor t = QuantizeAbsMax(x, 8, Granularity::kPerTensor);
  EXPECT_EQ(t.scales, std::vector<float>{4.0f / 127.0f});
  EXPECT_EQ(t.q, (std::vector<std::int32_t>{32, -64, 16, 127}));

  const DenseMatrix d = Dequantize(t);
  const float s = 4.0f / 127.0f;
  EXPECT_EQ(d.at(0, 0), 32.0f * s);
  EXPECT_EQ(d.at(0, 1), -64.0f * s);
  EXPECT_EQ(d.at(1, 0), 16.0f * s);
  EXPECT_FLOAT_EQ(d.at(1, 1), 4.0f);
}

// Per row: 1/(2/127) = 63.5 -> 64; 4/(8/127) = 63.5 -> 64.
TEST(QuantizeTest, PerTokenExample) {
  const DenseMatrix x(2, 2, {1.0f, 2.0f, 4.0f, 8.0f});
  const QuantizedTensor t = QuantizeAbsMax(x, 8, Granularity::kPerToken);
  EXPECT_EQ(t.scales, (std::vector<float>{2.0f / 127.0f, 8.0f / 127.0f}));
  EXPECT_EQ(t.q, (std::vector<std::int32_t>{64, 127, 64, 127}));
}

TEST(QuantizeTest, PerChannelUsesColumnMax) {
  const DenseMatrix w(2, 2, {1.0f, -3.0f, 0.5f, 6.0f}, Layout::kWeight);
  const QuantizedTensor t = QuantizeAbsMax(w, 4, Granularity::kPerChannel);
  EXPECT_EQ(t.scales, (std::vector<float>{1.0f / 7.0f, 6.0f / 7.0f}));
  // The stored scale float(6/7) is slightly above 6/7, so -3 / s is just
  // short of the -3.5 tie.
  EXPECT_GT(static_cast<double>(t.scales[1]), 6.0 / 7.0);
  EXPECT_EQ(t.q[1], -3);
  EXPECT_EQ(t.q[3], 7);
}

TEST(QuantizeTest, ZeroRowsAndColumnsGetUnitScale) {
  const DenseMatrix x(3, 2, {0.0f, 0.0f, 1.0f, -1.0f, 0.0f, 0.0f});
  const QuantizedTensor t = QuantizeAbsMax(x, 5, Granularity::kPerToken);
  EXPECT_EQ(t.scales[0], 1.0f);
  EXPECT_EQ(t.scales[2], 1.0f);
  EXPECT_EQ(t.q[0], 0);
  const DenseMatrix w = x.WithLayout(Layout::kWeight);
  const DenseMatrix zero_col(2, 2, {0.0f, 3.0f, 0.0f, -1.0f}, Layout::kWeight);
  const QuantizedTensor tc =
      QuantizeAbsMax(zero_col, 6, Granularity::kPerChannel);
  EXPECT_EQ(tc.scales[0], 1.0f);
  EXPECT_EQ(tc.q[0], 0);
  EXPECT_EQ(tc.q[2], 0);
  (void)w;
}

// x / s is 16.4999995 but rounds to exactly 16.5 in float.
TEST(QuantizeTest, RoundingDecisionUsesExactQuotient) {
  const float max_abs = 0x1.f51dbep+6f;
  const float x = 0x1.046c2ep+4f;
  const QuantizedTensor t = QuantizeAbsMax(DenseMatrix(1, 2, {max_abs, x}), 8,
                                           Granularity::kPerTensor);
  ASSERT_EQ(t.scales[0], 0x1.f90fdep-1f);
  ASSERT_EQ(x / t.scales[0], 16.5f);
  EXPECT_EQ(t.q[1], 16);
  EXPECT_LE(std::fabs(x - 16.0 * t.scales[0]), t.scales[0] / 2.0);
}

TEST(QuantizeTest, ConfigErrors) {
  const DenseMatrix x(1, 1, {1.0f});
  EXPECT_EQ(CodeOf([&] { QuantizeAbsMax(x, 1, Granularity::kPerTensor); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([&] { QuantizeAbsMax(x, 9, Granularity::kPerTensor); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([&] { QuantizeAbsMax(x, 8, Granularity::kPerChannel); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([&] {
              QuantizeAbsMax(x.WithLayout(Layout::kWeight), 8,
                             Granularity::kPerToken);
            }),
            ErrorCode::kConfig);
}

TEST(QuantizeTest, RoundHalfAwayFromZero) {
  EXPECT_EQ(RoundHalfAway(0.5), 1.0);
  EXPECT_EQ(RoundHalfAway(-0.5), -1.0);
  EXPECT_EQ(RoundHalfAway(2.5), 3.0);
  EXPECT_EQ(RoundHalfAway(-2.5), -3.0);
  EXPECT_EQ(RoundHalfAway(2.4999999999999996), 2.0);
}

TEST(FakeQuantizeTest, RepresentableGridIsFixedPoint) {
  // Power-of-two step keeps every k * s exact.
  const float s = 0x1p-5f;
  std::vector<float> grid;
  for (int k = -127; k <= 127; ++k) grid.push_back(static_cast<float>(k) * s);
  const DenseMatrix x(1, grid.size(), grid);
  EXPECT_TRUE(FakeQuantize(x, 8, Granularity::kPerTensor).BitEqual(x));
  EXPECT_TRUE(FakeQuantize(DenseMatrix::Zeros(3, 3), 8, Granularity::kPerTensor)
                  .BitEqual(DenseMatrix::Zeros(3, 3)));
}

// Range invariant and the half-step error bound over random groups. The bound
// holds for the exact reconstruction q * s; the stored float is that value
// correctly rounded.
TEST(FakeQuantizeTest, RangeAndHalfStepBound) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  for (int trial = 0; trial < 400; ++trial) {
    const int bits = 2 + trial % 7;
    const double stddev = std::pow(10.0, log_scale(rng));
    const DenseMatrix x = oracle::RandomMatrix(rng, 8, 16, Layout::kActivation,
                                               stddev);
    const auto g = trial % 2 ? Granularity::kPerToken : Granularity::kPerTensor;
    const QuantizedTensor t = QuantizeAbsMax(x, bits, g);
    const DenseMatrix fq = Dequantize(t);
    const std::int32_t levels = MaxLevel(bits);
    for (std::size_t r = 0; r < x.rows(); ++r) {
      for (std::size_t c = 0; c < x.cols(); ++c) {
        const std::int32_t q = t.q[r * x.cols() + c];
        ASSERT_LE(std::abs(q), levels);
        const double s = t.ScaleAt(r, c);
        ASSERT_GT(s, 0.0);
        const double exact = static_cast<double>(q) * s;
        ASSERT_LE(std::fabs(x.at(r, c) - exact), s / 2.0)
            << "bits=" << bits << " x=" << x.at(r, c) << " q=" << q;
        ASSERT_EQ(fq.at(r, c), static_cast<float>(exact));
      }
    }
  }
}

TEST(FakeQuantizeTest, ErrorShrinksWithBits) {
  std::mt19937_64 rng(3);
  const DenseMatrix x = oracle::RandomMatrix(rng, 64, 64, Layout::kActivation);
  double prev_rel = INFINITY, prev_sqnr = -INFINITY;
  for (int bits = 4; bits <= 8; ++bits) {
    const ErrorStats s =
        ComputeErrorStats(x, FakeQuantize(x, bits, Granularity::kPerTensor));
    EXPECT_LT(s.rel_frobenius, prev_rel) << bits;
    EXPECT_GT(s.sqnr_db, prev_sqnr) << bits;
    prev_rel = s.rel_frobenius;
    prev_sqnr = s.sqnr_db;
  }
}

TEST(FakeQuantizeTest, PerTokenNoWorseThanPerTensor) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> mag(0.01, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<float> v;
    const std::size_t rows = 16, cols = 32;
    std::normal_distribution<double> n(0.0, 1.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const double m = mag(rng);
      for (std::size_t c = 0; c < cols; ++c) {
        v.push_back(static_cast<float>(m * n(rng)));
      }
    }
    const DenseMatrix x(rows, cols, std::move(v));
    for (int bits : {4, 6, 8}) {
      const double tensor_err =
          ComputeErrorStats(x, FakeQuantize(x, bits, Granularity::kPerTensor))
              .rel_frobenius;
      const double token_err =
          ComputeErrorStats(x, FakeQuantize(x, bits, Granularity::kPerToken))
              .rel_frobenius;
      EXPECT_LE(token_err, tensor_err) << "trial " << trial << " bits " << bits;
    }
  }
}

TEST(IntGemmTest, HandExamples) {
  QuantizedTensor a{1, 1, Layout::kActivation, 8, Granularity::kPerTensor,
                    {1}, {1.0f}};
  QuantizedTensor w{1, 1, Layout::kWeight, 8, Granularity::kPerTensor,
                    {1}, {1.0f}};
  EXPECT_EQ(IntGemm(a, w).at(0, 0), 1.0f);

  // acc = 2*1 + 3*(-1) = -1; -1 * 0.5 * 2 = -1
  a = {1, 2, Layout::kActivation, 8, Granularity::kPerTensor, {2, 3}, {0.5f}};
  w = {2, 1, Layout::kWeight, 8, Granularity::kPerTensor, {1, -1}, {2.0f}};
  EXPECT_EQ(IntGemm(a, w).at(0, 0), -1.0f);
}

TEST(IntGemmTest, Errors) {
  const QuantizedTensor a{1, 2, Layout::kActivation, 8,
                          Granularity::kPerTensor, {1, 1}, {1.0f}};
  const QuantizedTensor w{3, 1, Layout::kWeight, 8, Granularity::kPerTensor,
                          {1, 1, 1}, {1.0f}};
  EXPECT_EQ(CodeOf([&] { IntGemm(a, w); }), ErrorCode::kShape);
  QuantizedTensor a_bad = a;
  a_bad.layout = Layout::kWeight;
  const QuantizedTensor w2{2, 1, Layout::kWeight, 8, Granularity::kPerTensor,
                           {1, 1}, {1.0f}};
  EXPECT_EQ(CodeOf([&] { IntGemm(a_bad, w2); }), ErrorCode::kConfig);
  const QuantizedTensor sq{2, 2, Layout::kActivation, 8,
                           Granularity::kPerTensor, {1, 1, 1, 1}, {1.0f}};
  EXPECT_EQ(CodeOf([&] { IntGemm(sq, sq); }), ErrorCode::kConfig);
}

TEST(IntGemmTest, MatchesF64ReferenceOfDequantizedOperands) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 1 + rng() % 64, k = 1 + rng() % 64,
                      n = 1 + rng() % 64;
    const DenseMatrix x = oracle::RandomMatrix(rng, m, k, Layout::kActivation);
    const DenseMatrix w = oracle::RandomMatrix(rng, k, n, Layout::kWeight);
    const auto ag = trial % 2 ? Granularity::kPerToken : Granularity::kPerTensor;
    const auto wg =
        trial % 3 ? Granularity::kPerChannel : Granularity::kPerTensor;
    const QuantizedTensor qa = QuantizeAbsMax(x, 8, ag);
    const QuantizedTensor qw = QuantizeAbsMax(w, 8, wg);
    const DenseMatrix out = IntGemm(qa, qw);
    const oracle::RefMatrix ref = oracle::Gemm(oracle::DequantizeExact(qa),
                                               oracle::DequantizeExact(qw));
    EXPECT_LT(oracle::RelFrobenius(ref, out), 1e-6) << trial;
  }
}

TEST(GemmTest, ThreadCountDoesNotChangeBits) {
  std::mt19937_64 rng(5);
  const DenseMatrix x = oracle::RandomMatrix(rng, 96, 80, Layout::kActivation);
  const DenseMatrix w = oracle::RandomMatrix(rng, 80, 1024, Layout::kWeight);
  const QuantizedTensor qa = QuantizeAbsMax(x, 8, Granularity::kPerToken);
  const QuantizedTensor qw = QuantizeAbsMax(w, 8, Granularity::kPerChannel);
  SetMaxThreads(1);
  const DenseMatrix f1 = Gemm(x, w);
  const DenseMatrix i1 = IntGemm(qa, qw);
  SetMaxThreads(4);
  EXPECT_TRUE(Gemm(x, w).BitEqual(f1));
  EXPECT_TRUE(IntGemm(qa, qw).BitEqual(i1));
  SetMaxThreads(0);
}

TEST(GemmTest, ShapeMismatch) {
  EXPECT_EQ(CodeOf([] {
              Gemm(DenseMatrix::Zeros(2, 3), DenseMatrix::Zeros(2, 3));
            }),
            ErrorCode::kShape);
}

}  // namespace
}  // namespace muxq
