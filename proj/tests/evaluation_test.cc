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

#include "wordbox/evaluation.h"

#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>
#include "oracles.h"

namespace wordbox {
namespace {

ScoredBox Det(const BBox& b, double score) { return {b, score, kTextClass}; }

TEST(DefaultRecallThresholdsTest, TenthToNinetiethInFivePercentSteps) {
  const std::vector<double> t = DefaultRecallThresholds();
  ASSERT_EQ(t.size(), 17u);
  EXPECT_DOUBLE_EQ(t.front(), 0.10);
  EXPECT_DOUBLE_EQ(t[8], 0.50);
  EXPECT_DOUBLE_EQ(t.back(), 0.90);
}

TEST(RecallCurveTest, CountsCoveredGroundTruth) {
  const std::vector<std::vector<BBox>> gts = {
      {BBox{0, 0, 10, 10}, BBox{50, 50, 60, 60}}};
  // 0.5 overlap with the first word, 0.25 with the second.
  const std::vector<std::vector<ScoredBox>> props = {
      {Det(BBox{0, 0, 10, 20}, 0.9), Det(BBox{50, 50, 55, 55}, 0.8)}};
  const std::vector<double> thr = {0.2, 0.25, 0.3, 0.5, 0.6};
  const RecallCurve c = ComputeRecallCurve(props, gts, 300, thr);
  EXPECT_EQ(c.recall, (std::vector<double>{1.0, 1.0, 0.5, 0.5, 0.0}));
  EXPECT_EQ(c.n_proposals, 300u);
}

TEST(RecallCurveTest, OnlyTopNProposalsCount) {
  const std::vector<std::vector<BBox>> gts = {{BBox{0, 0, 10, 10}}};
  const std::vector<std::vector<ScoredBox>> props = {
      {Det(BBox{100, 0, 110, 10}, 0.9), Det(BBox{0, 0, 10, 10}, 0.1)}};
  const std::vector<double> thr = {0.5};
  EXPECT_EQ(ComputeRecallCurve(props, gts, 1, thr).recall[0], 0.0);
  EXPECT_EQ(ComputeRecallCurve(props, gts, 2, thr).recall[0], 1.0);
}

TEST(RecallCurveTest, MonotoneOnRandomData) {
  std::mt19937_64 rng(51);
  std::vector<std::vector<BBox>> gts(10);
  std::vector<std::vector<ScoredBox>> props(10);
  for (int i = 0; i < 10; ++i) {
    for (int g = 0; g < 5; ++g) gts[i].push_back(testing::RandomBox(rng, 300, 10, 80));
    props[i] = testing::RandomClusteredBoxes(rng, 200, true);
  }
  const std::vector<double> thr = DefaultRecallThresholds();
  std::vector<double> previous(thr.size(), 0.0);
  for (std::size_t n : {10, 50, 100, 200}) {
    const RecallCurve c = ComputeRecallCurve(props, gts, n, thr);
    for (std::size_t k = 0; k < thr.size(); ++k) {
      if (k > 0) EXPECT_LE(c.recall[k], c.recall[k - 1]);
      EXPECT_GE(c.recall[k], previous[k]);
    }
    previous = c.recall;
  }
}

TEST(RecallCurveTest, RejectsMismatchedInput) {
  const std::vector<std::vector<BBox>> gts(2);
  const std::vector<std::vector<ScoredBox>> props(1);
  const std::vector<double> thr = {0.5};
  EXPECT_THROW(ComputeRecallCurve(props, gts, 10, thr), std::invalid_argument);
}

TEST(PrfTest, OneToOneMatching) {
  const std::vector<BBox> gts = {BBox{0, 0, 10, 10}, BBox{40, 0, 50, 10}};
  // Two detections on the first word: only one can match.
  const std::vector<ScoredBox> dets = {Det(BBox{0, 0, 10, 10}, 0.9),
                                       Det(BBox{0, 0, 10, 11}, 0.8),
                                       Det(BBox{40, 0, 50, 12}, 0.7)};
  const Prf p = MatchDetections(dets, gts);
  EXPECT_EQ(p.tp, 2u);
  EXPECT_EQ(p.fp, 1u);
  EXPECT_EQ(p.fn, 0u);
  EXPECT_DOUBLE_EQ(p.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(p.recall, 1.0);
  EXPECT_DOUBLE_EQ(p.f_measure, 0.8);
}

TEST(PrfTest, MatchThresholdIsInclusive) {
  const std::vector<BBox> gts = {BBox{0, 0, 10, 10}};
  const std::vector<ScoredBox> dets = {Det(BBox{0, 0, 10, 20}, 0.9)};
  EXPECT_EQ(MatchDetections(dets, gts, 0.5).tp, 1u);
  EXPECT_EQ(MatchDetections(dets, gts, 0.51).tp, 0u);
}

TEST(PrfTest, EdgeCases) {
  const Prf none = PrfFromCounts(0, 0, 3);
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f_measure, 0.0);
  const Prf empty = PrfFromCounts(0, 0, 0);
  EXPECT_EQ(empty.precision, 1.0);
  EXPECT_EQ(empty.recall, 1.0);
  const Prf spurious = PrfFromCounts(0, 4, 0);
  EXPECT_EQ(spurious.precision, 0.0);
  EXPECT_EQ(spurious.recall, 1.0);
}

TEST(PrfTest, AggregationPoolsCounts) {
  const std::vector<Prf> per_image = {PrfFromCounts(3, 1, 0),
                                      PrfFromCounts(1, 0, 3)};
  const Prf total = AggregatePrf(per_image);
  EXPECT_EQ(total.tp, 4u);
  EXPECT_DOUBLE_EQ(total.precision, 0.8);
  EXPECT_DOUBLE_EQ(total.recall, 4.0 / 7.0);
}

TEST(ConfusionRatesTest, Rates) {
  const std::vector<bool> predicted = {true, true, false, true, false};
  const std::vector<bool> actual = {true, false, true, true, false};
  const ConfusionRates r = ComputeConfusionRates(predicted, actual);
  EXPECT_DOUBLE_EQ(r.tp_rate, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.fp_rate, 0.5);
  EXPECT_THROW(ComputeConfusionRates({true}, {true, false}),
               std::invalid_argument);
  EXPECT_THROW(ComputeConfusionRates({true}, {true}), std::invalid_argument);
}

}  // namespace
}  // namespace wordbox
