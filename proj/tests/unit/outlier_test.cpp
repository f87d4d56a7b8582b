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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "muxq/outlier.hpp"
#include "oracle/reference.hpp"
#include "test_util.hpp"

namespace muxq {
namespace {

using testing_util::CodeOf;

TEST(DetectOutliersTest, StrictThresholdOnColumnMax) {
  const DenseMatrix x(2, 3, {5.9f, 1.0f, 3.0f, -2.0f, 6.1f, 0.0f});
  const OutlierSet s = DetectOutlierChannels(x, 6.0);
  EXPECT_EQ(s.indices, std::vector<std::size_t>{1});
  EXPECT_EQ(s.theta, 6.0);
}

TEST(DetectOutliersTest, ExactThresholdIsNotOutlier) {
  const DenseMatrix x(1, 3, {6.0f, -6.0f, 1.0f});
  EXPECT_TRUE(DetectOutlierChannels(x).empty());
}

TEST(DetectOutliersTest, NegativeValuesCount) {
  std::vector<float> v(3 * 6, 0.5f);
  v[2 * 6 + 4] = -6.0001f;
  const DenseMatrix x(3, 6, v);
  EXPECT_EQ(DetectOutlierChannels(x, 6.0).indices,
            std::vector<std::size_t>{4});
}

TEST(DetectOutliersTest, NonPositiveThetaRejected) {
  const DenseMatrix x(1, 1, {1.0f});
  EXPECT_EQ(CodeOf([&] { DetectOutlierChannels(x, 0.0); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([&] { DetectOutlierChannels(x, -1.0); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([&] {
              DetectOutlierChannels(x, std::numeric_limits<double>::quiet_NaN());
            }),
            ErrorCode::kConfig);
}

TEST(DetectOutliersTest, MatchesBruteForceScan) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng() % 40, cols = 1 + rng() % 80;
    const auto planted = oracle::RandomSubset(rng, cols, rng() % 5);
    const DenseMatrix x =
        oracle::RandomWithOutliers(rng, rows, cols, planted, 8.0);
    for (double theta : {0.5, 3.0, 6.0, 20.0}) {
      EXPECT_EQ(DetectOutlierChannels(x, theta).indices,
                oracle::BruteForceOutliers(x, theta));
    }
  }
}

TEST(DetectOutliersTest, MonotoneInTheta) {
  std::mt19937_64 rng(12);
  const DenseMatrix x =
      oracle::RandomWithOutliers(rng, 64, 128, {5, 50, 99}, 10.0);
  std::vector<std::size_t> prev = DetectOutlierChannels(x, 0.1).indices;
  for (double theta = 0.5; theta < 60.0; theta *= 1.5) {
    const std::vector<std::size_t> cur = DetectOutlierChannels(x, theta).indices;
    EXPECT_TRUE(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
    prev = cur;
  }
}

TEST(DetectOutliersTest, PermutationEquivariant) {
  std::mt19937_64 rng(13);
  const std::size_t rows = 32, cols = 48;
  const DenseMatrix x =
      oracle::RandomWithOutliers(rng, rows, cols, {2, 30, 47}, 12.0);
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const DenseMatrix xp = GatherColumns(x, perm);

  std::vector<std::size_t> expected;
  for (std::size_t c : DetectOutlierChannels(x).indices) {
    expected.push_back(std::find(perm.begin(), perm.end(), c) - perm.begin());
  }
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(DetectOutlierChannels(xp).indices, expected);
}

TEST(DetectOutliersTest, ThetaAboveGlobalMaxGivesEmptySet) {
  std::mt19937_64 rng(14);
  const DenseMatrix x =
      oracle::RandomWithOutliers(rng, 16, 16, {1, 2}, 100.0);
  EXPECT_TRUE(DetectOutlierChannels(x, 1e30).empty());
}

TEST(ValidateOutlierSetTest, RejectsBadSets) {
  EXPECT_NO_THROW(ValidateOutlierSet({{0, 3}, 6.0}, 4));
  EXPECT_EQ(CodeOf([] { ValidateOutlierSet({{4}, 6.0}, 4); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ValidateOutlierSet({{2, 1}, 6.0}, 4); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ValidateOutlierSet({{1, 1}, 6.0}, 4); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ValidateOutlierSet({{1}, 0.0}, 4); }),
            ErrorCode::kConfig);
}

}  // namespace
}  // namespace muxq
