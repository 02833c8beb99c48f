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

#include "wordbox/labeling.h"

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>
#include "oracles.h"
#include "wordbox/codec.h"

namespace wordbox {
namespace {

const BBox kGt{0, 0, 10, 10};

// Proposals overlapping kGt by exactly 0.5, 0.3, 0.2 and 0.1.
std::vector<BBox> BoundaryProposals() {
  return {BBox{0, 0, 10, 20}, BBox{0, 0, 3, 10}, BBox{0, 0, 2, 10},
          BBox{0, 0, 1, 10}};
}

TEST(AssignDetectionLabelsTest, BoundaryValues) {
  const std::vector<BBox> gts = {kGt};
  const LabelAssignment a = AssignDetectionLabels(BoundaryProposals(), gts);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a.labels[0], Label::kPositive);
  EXPECT_EQ(a.labels[1], Label::kAmbiguous);
  EXPECT_EQ(a.labels[2], Label::kAmbiguous);
  EXPECT_EQ(a.labels[3], Label::kBackground);
  EXPECT_EQ(a.matched_gt[0], 0u);
  EXPECT_EQ(a.matched_gt[1], 0u);
  EXPECT_FALSE(a.matched_gt[3].has_value());
  EXPECT_TRUE(a.targets[0].has_value());
  EXPECT_FALSE(a.targets[1].has_value());
  EXPECT_DOUBLE_EQ(a.max_iou[0], 0.5);
}

TEST(AssignRpnLabelsTest, BoundaryValuesWithoutForcing) {
  const std::vector<BBox> gts = {kGt};
  std::vector<BBox> priors = BoundaryProposals();
  priors.push_back(BBox{0, 0, 10, 12});  // IoU 10/12
  const LabelAssignment a = AssignRpnLabels(priors, gts, false);
  EXPECT_EQ(a.labels[0], Label::kIgnore);  // exactly 0.5 is not positive
  EXPECT_EQ(a.labels[1], Label::kIgnore);  // exactly 0.3 is not background
  EXPECT_EQ(a.labels[2], Label::kBackground);
  EXPECT_EQ(a.labels[3], Label::kBackground);
  EXPECT_EQ(a.labels[4], Label::kPositive);
}

TEST(AssignRpnLabelsTest, BestPriorIsForcedPositive) {
  const std::vector<BBox> gts = {kGt};
  const std::vector<BBox> priors = {BBox{0, 0, 1, 10}, BBox{50, 50, 60, 60}};
  const LabelAssignment plain = AssignRpnLabels(priors, gts, false);
  EXPECT_EQ(plain.labels[0], Label::kBackground);
  const LabelAssignment forced = AssignRpnLabels(priors, gts, true);
  EXPECT_EQ(forced.labels[0], Label::kPositive);
  EXPECT_EQ(forced.matched_gt[0], 0u);
  EXPECT_EQ(forced.labels[1], Label::kBackground);
}

TEST(AssignRpnLabelsTest, GroundTruthWithoutOverlapForcesNothing) {
  const std::vector<BBox> gts = {BBox{100, 100, 110, 110}};
  const std::vector<BBox> priors = {kGt};
  const LabelAssignment a = AssignRpnLabels(priors, gts, true);
  EXPECT_EQ(a.labels[0], Label::kBackground);
}

TEST(AssignRpnLabelsTest, ExcludedPriorsAreIgnored) {
  PriorConfig config;
  config.scales = {8.0, 80.0};
  config.aspect_ratios = {1.0};
  config.drop_cross_boundary = true;
  const PriorLattice lattice = GeneratePriors(2, 2, 32, 32, config);
  const std::vector<BBox> gts = {BBox{0, 0, 32, 32}};
  const LabelAssignment a = AssignRpnLabels(lattice, gts, true);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (lattice.excluded[i]) EXPECT_EQ(a.labels[i], Label::kIgnore);
  }
}

TEST(AssignLabelsTest, NoGroundTruthMeansBackground) {
  const std::vector<BBox> priors = BoundaryProposals();
  for (const LabelAssignment& a :
       {AssignRpnLabels(priors, {}, true), AssignDetectionLabels(priors, {})}) {
    EXPECT_EQ(a.Count(Label::kBackground), priors.size());
  }
}

TEST(AssignLabelsTest, PositiveTargetsDecodeToMatchedGroundTruth) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<BBox> gts;
    for (int g = 0; g < 3; ++g) gts.push_back(testing::RandomBox(rng, 100, 5, 40));
    std::vector<BBox> props;
    for (int p = 0; p < 30; ++p) props.push_back(testing::RandomBox(rng, 100, 5, 40));
    for (const LabelAssignment& a :
         {AssignRpnLabels(props, gts, true), AssignDetectionLabels(props, gts)}) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.labels[i] != Label::kPositive) continue;
        const BBox& g = gts[*a.matched_gt[i]];
        const BBox back = Decode(*a.targets[i], props[i]);
        EXPECT_NEAR(back.x1, g.x1, 1e-9);
        EXPECT_NEAR(back.y1, g.y1, 1e-9);
        EXPECT_NEAR(back.x2, g.x2, 1e-9);
        EXPECT_NEAR(back.y2, g.y2, 1e-9);
      }
    }
  }
}

LabelAssignment SyntheticAssignment(int pos, int amb, int bg, int ign) {
  LabelAssignment a;
  auto push = [&](int n, Label l) {
    for (int i = 0; i < n; ++i) {
      a.labels.push_back(l);
      a.matched_gt.emplace_back();
      a.targets.emplace_back();
      a.max_iou.push_back(0.0);
    }
  };
  push(pos, Label::kPositive);
  push(amb, Label::kAmbiguous);
  push(bg, Label::kBackground);
  push(ign, Label::kIgnore);
  return a;
}

std::size_t CountLabel(const std::vector<SampledIndex>& batch, Label l) {
  std::size_t n = 0;
  for (const SampledIndex& s : batch) n += s.label == l;
  return n;
}

TEST(SampleMinibatchTest, RpnQuotaAndShortfall) {
  SamplerConfig config;
  const LabelAssignment rich = SyntheticAssignment(500, 0, 2000, 50);
  const auto full = SampleMinibatch(rich, Stage::kRpn, config);
  EXPECT_EQ(CountLabel(full, Label::kPositive), 128u);
  EXPECT_EQ(CountLabel(full, Label::kBackground), 128u);

  const LabelAssignment poor = SyntheticAssignment(10, 0, 2000, 50);
  const auto filled = SampleMinibatch(poor, Stage::kRpn, config);
  EXPECT_EQ(CountLabel(filled, Label::kPositive), 10u);
  EXPECT_EQ(CountLabel(filled, Label::kBackground), 246u);
  EXPECT_EQ(CountLabel(filled, Label::kIgnore), 0u);
}

TEST(SampleMinibatchTest, DetectionQuotaAndShortfall) {
  SamplerConfig config;
  const LabelAssignment rich = SyntheticAssignment(100, 100, 1000, 0);
  const auto full = SampleMinibatch(rich, Stage::kDetection, config);
  EXPECT_EQ(CountLabel(full, Label::kPositive), 64u);
  EXPECT_EQ(CountLabel(full, Label::kAmbiguous), 32u);
  EXPECT_EQ(CountLabel(full, Label::kBackground), 160u);

  const LabelAssignment poor = SyntheticAssignment(4, 2, 1000, 0);
  const auto filled = SampleMinibatch(poor, Stage::kDetection, config);
  EXPECT_EQ(CountLabel(filled, Label::kPositive), 4u);
  EXPECT_EQ(CountLabel(filled, Label::kAmbiguous), 2u);
  EXPECT_EQ(CountLabel(filled, Label::kBackground), 250u);
}

TEST(SampleMinibatchTest, DeterministicUniqueAndLabelConsistent) {
  SamplerConfig config;
  config.seed = 99;
  const LabelAssignment a = SyntheticAssignment(300, 80, 900, 40);
  const auto first = SampleMinibatch(a, Stage::kDetection, config);
  const auto second = SampleMinibatch(a, Stage::kDetection, config);
  ASSERT_EQ(first.size(), second.size());
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].index, second[i].index);
    EXPECT_EQ(a.labels[first[i].index], first[i].label);
    EXPECT_TRUE(seen.insert(first[i].index).second);
  }
  config.seed = 100;
  const auto other = SampleMinibatch(a, Stage::kDetection, config);
  bool differs = false;
  for (std::size_t i = 0; i < other.size(); ++i) {
    differs = differs || other[i].index != first[i].index;
  }
  EXPECT_TRUE(differs);
}

TEST(SampleMinibatchTest, RejectsNegativeQuota) {
  SamplerConfig config;
  config.n_b = -1;
  EXPECT_THROW(SampleMinibatch(SyntheticAssignment(1, 0, 1, 0), Stage::kRpn,
                               config),
               std::invalid_argument);
}

TEST(LabelNameTest, Names) {
  EXPECT_EQ(LabelName(Label::kPositive), "positive");
  EXPECT_EQ(LabelName(Label::kIgnore), "ignore");
}

}  // namespace
}  // namespace wordbox
