/* Copyright 2026 The Wordbox Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "wordbox/mlrp.h"

#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>
#include "oracles.h"

namespace wordbox {
namespace {

// Grid whose value at (c, y, x) is 100 c + 10 y + x.
FeatureGrid RampGrid(int channels, int h, int w, double stride) {
  FeatureGrid g{Tensor3(channels, h, w), stride};
  for (int c = 0; c < channels; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) g.data.at(c, y, x) = 100 * c + 10 * y + x;
    }
  }
  return g;
}

FeatureGrid RandomGrid(std::mt19937_64& rng, int c, int h, int w,
                       double stride) {
  FeatureGrid g{Tensor3(c, h, w), stride};
  for (double& v : g.data.values()) v = testing::Uniform(rng, -5, 5);
  return g;
}

TEST(AdaptiveBinTest, FloorCeilCoverage) {
  // 5 cells over 2 bins overlap on the middle cell.
  EXPECT_EQ(AdaptiveBin(0, 5, 2).begin, 0);
  EXPECT_EQ(AdaptiveBin(0, 5, 2).end, 3);
  EXPECT_EQ(AdaptiveBin(1, 5, 2).begin, 2);
  EXPECT_EQ(AdaptiveBin(1, 5, 2).end, 5);
  // More bins than cells: every bin still holds one cell.
  for (int i = 0; i < 7; ++i) {
    const CellRange r = AdaptiveBin(i, 3, 7);
    EXPECT_LT(r.begin, r.end);
    EXPECT_GE(r.begin, 0);
    EXPECT_LE(r.end, 3);
  }
}

TEST(MapRoiToGridTest, FloorAndCeilAtStride) {
  const FeatureGrid g = RampGrid(1, 10, 10, 16);
  const GridRegion r = MapRoiToGrid(g, BBox{17, 5, 40, 33});
  EXPECT_EQ(r.cols.begin, 1);
  EXPECT_EQ(r.cols.end, 3);
  EXPECT_EQ(r.rows.begin, 0);
  EXPECT_EQ(r.rows.end, 3);
}

TEST(MapRoiToGridTest, ClampsToGridAndRejectsOutside) {
  const FeatureGrid g = RampGrid(1, 4, 4, 8);
  const GridRegion r = MapRoiToGrid(g, BBox{-20, -20, 100, 100});
  EXPECT_EQ(r.rows.begin, 0);
  EXPECT_EQ(r.rows.end, 4);
  EXPECT_THROW(MapRoiToGrid(g, BBox{40, 40, 60, 60}), std::invalid_argument);
  EXPECT_THROW(MapRoiToGrid(g, BBox{1, 1, 1, 5}), std::invalid_argument);
}

TEST(RoiMaxPoolTest, WholeGridToOneBinIsGlobalMax) {
  const FeatureGrid g = RampGrid(2, 6, 5, 8);
  const PooledFeature p = RoiMaxPool(g, BBox{0, 0, 40, 48}, 1, 1);
  EXPECT_EQ(p.at(0, 0, 0), 54);
  EXPECT_EQ(p.at(1, 0, 0), 154);
}

TEST(RoiMaxPoolTest, SmallRoiReplicatesCells) {
  const FeatureGrid g = RampGrid(1, 8, 8, 16);
  // One cell region pooled to 7x7 repeats the cell value.
  const PooledFeature p = RoiMaxPool(g, BBox{33, 17, 40, 30});
  for (double v : p.values()) EXPECT_EQ(v, 12);
}

TEST(RoiMaxPoolTest, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const int h = testing::UniformInt(rng, 1, 20);
    const int w = testing::UniformInt(rng, 1, 20);
    const double stride = testing::UniformInt(rng, 0, 1) ? 8.0 : 16.0;
    const FeatureGrid g = RandomGrid(rng, testing::UniformInt(rng, 1, 4), h, w,
                                     stride);
    const double x1 = testing::Uniform(rng, 0, w * stride - 1);
    const double y1 = testing::Uniform(rng, 0, h * stride - 1);
    const BBox roi{x1, y1, x1 + testing::Uniform(rng, 0.5, 200),
                   y1 + testing::Uniform(rng, 0.5, 200)};
    const int ph = testing::UniformInt(rng, 1, 9);
    const int pw = testing::UniformInt(rng, 1, 9);
    EXPECT_EQ(RoiMaxPool(g, roi, ph, pw),
              testing::BruteForcePool(g.data, stride, roi, ph, pw));
  }
}

TEST(ConcatChannelsTest, StacksInOrder) {
  const Tensor3 a(1, 2, 2, 1.0);
  const Tensor3 b(2, 2, 2, 2.0);
  const std::vector<Tensor3> parts = {a, b};
  const Tensor3 c = ConcatChannels(parts);
  ASSERT_EQ(c.channels(), 3);
  EXPECT_EQ(c.at(0, 1, 1), 1.0);
  EXPECT_EQ(c.at(2, 0, 0), 2.0);
  const std::vector<Tensor3> mismatched = {a, Tensor3(1, 3, 2)};
  EXPECT_THROW(ConcatChannels(mismatched), std::invalid_argument);
}

TEST(ApplyFusionTest, MatchesExplicitMatmul) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 50; ++t) {
    const int in_c = testing::UniformInt(rng, 1, 6);
    const int out_c = testing::UniformInt(rng, 1, 6);
    Tensor3 in(in_c, 3, 4);
    for (double& v : in.values()) v = testing::Uniform(rng, -3, 3);
    FusionWeights w{out_c, in_c, {}, std::nullopt};
    for (int i = 0; i < out_c * in_c; ++i) {
      w.matrix.push_back(testing::Uniform(rng, -1, 1));
    }
    std::vector<double> bias;
    if (t % 2) {
      for (int o = 0; o < out_c; ++o) bias.push_back(testing::Uniform(rng, -1, 1));
      w.bias = bias;
    }
    const Tensor3 got = ApplyFusion(in, w);
    const Tensor3 want = testing::ReferenceFusion(in, w.matrix, bias, out_c);
    ASSERT_EQ(got.channels(), out_c);
    for (std::size_t i = 0; i < got.values().size(); ++i) {
      EXPECT_NEAR(got.values()[i], want.values()[i], 1e-9);
    }
  }
}

TEST(ApplyFusionTest, RejectsChannelMismatch) {
  const FusionWeights w{1, 3, {1, 1, 1}, std::nullopt};
  EXPECT_THROW(ApplyFusion(Tensor3(2, 1, 1), w), std::invalid_argument);
  const FusionWeights bad{1, 2, {1}, std::nullopt};
  EXPECT_THROW(ApplyFusion(Tensor3(2, 1, 1), bad), std::invalid_argument);
}

TEST(FuseMultiLevelTest, EqualsPoolConcatFuse) {
  std::mt19937_64 rng(33);
  const std::vector<FeatureGrid> grids = {
      RandomGrid(rng, 2, 16, 16, kFineStride),
      RandomGrid(rng, 3, 8, 8, kCoarseStride)};
  const FusionWeights w{2, 5, {1, 0, 2, 0, -1, 0, 1, 0, 3, 0.5}, std::nullopt};
  const BBox roi{10, 20, 90, 70};
  const Tensor3 fine = RoiMaxPool(grids[0], roi);
  const Tensor3 coarse = RoiMaxPool(grids[1], roi);
  const std::vector<Tensor3> parts = {fine, coarse};
  EXPECT_EQ(FuseMultiLevel(grids, roi, kPooledSize, kPooledSize, w),
            ApplyFusion(ConcatChannels(parts), w));
}

TEST(FusionWeightGradientTest, SumsUpstreamTimesInput) {
  Tensor3 in(2, 1, 2, std::vector<double>{1, 2, 3, 4});
  Tensor3 up(1, 1, 2, std::vector<double>{10, 100});
  const FusionGradient g = FusionWeightGradient(in, up);
  ASSERT_EQ(g.matrix.size(), 2u);
  EXPECT_DOUBLE_EQ(g.matrix[0], 1 * 10 + 2 * 100);
  EXPECT_DOUBLE_EQ(g.matrix[1], 3 * 10 + 4 * 100);
  EXPECT_DOUBLE_EQ(g.bias[0], 110);
}

TEST(Tensor3Test, RejectsWrongValueCount) {
  EXPECT_THROW(Tensor3(1, 2, 2, std::vector<double>{1, 2, 3}),
               std::invalid_argument);
}

}  // namespace
}  // namespace wordbox
