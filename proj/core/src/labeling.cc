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

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace wordbox {
namespace {

struct BestMatch {
  double iou = 0.0;
  std::optional<std::size_t> gt;
};

// Highest IoU over ground truths; ties go to the lowest gt index.
BestMatch BestGroundTruth(const BBox& box, std::span<const BBox> gts) {
  BestMatch best;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    const double iou = Iou(box, gts[g]);
    if (!best.gt || iou > best.iou) {
      best.iou = iou;
      best.gt = g;
    }
  }
  return best;
}

LabelAssignment EmptyAssignment(std::size_t n) {
  LabelAssignment out;
  out.labels.assign(n, Label::kBackground);
  out.matched_gt.assign(n, std::nullopt);
  out.targets.assign(n, std::nullopt);
  out.max_iou.assign(n, 0.0);
  return out;
}

void MarkPositive(LabelAssignment& out, std::size_t i, std::size_t gt,
                  const BBox& box, const BBox& gt_box) {
  out.labels[i] = Label::kPositive;
  out.matched_gt[i] = gt;
  out.targets[i] = Encode(box, gt_box);
}

LabelAssignment AssignRpn(std::span<const BBox> priors,
                          std::span<const BBox> gts,
                          std::span<const std::uint8_t> excluded,
                          bool force_best_match) {
  LabelAssignment out = EmptyAssignment(priors.size());
  auto is_excluded = [&](std::size_t i) {
    return !excluded.empty() && excluded[i] != 0;
  };

  for (std::size_t i = 0; i < priors.size(); ++i) {
    if (is_excluded(i)) {
      out.labels[i] = Label::kIgnore;
      continue;
    }
    const BestMatch best = BestGroundTruth(priors[i], gts);
    out.max_iou[i] = best.iou;
    if (best.iou > kRpnPositiveIou) {
      MarkPositive(out, i, *best.gt, priors[i], gts[*best.gt]);
    } else if (best.iou < kRpnBackgroundIou) {
      out.labels[i] = Label::kBackground;
    } else {
      out.labels[i] = Label::kIgnore;
    }
  }

  if (!force_best_match) return out;

  // A prior forced by several ground truths keeps the one it overlaps most.
  std::vector<double> forced_iou(priors.size(), -1.0);
  for (std::size_t g = 0; g < gts.size(); ++g) {
    double best_iou = 0.0;
    std::optional<std::size_t> best_prior;
    for (std::size_t i = 0; i < priors.size(); ++i) {
      if (is_excluded(i)) continue;
      const double iou = Iou(priors[i], gts[g]);
      if (iou > best_iou) {
        best_iou = iou;
        best_prior = i;
      }
    }
    if (!best_prior) continue;
    const std::size_t i = *best_prior;
    if (out.labels[i] == Label::kPositive && forced_iou[i] < 0.0) continue;
    if (best_iou > forced_iou[i]) {
      forced_iou[i] = best_iou;
      MarkPositive(out, i, g, priors[i], gts[g]);
    }
  }
  return out;
}

}  // namespace

std::string_view LabelName(Label label) {
  switch (label) {
    case Label::kBackground:
      return "background";
    case Label::kAmbiguous:
      return "ambiguous";
    case Label::kPositive:
      return "positive";
    case Label::kIgnore:
      return "ignore";
  }
  return "unknown";
}

std::size_t LabelAssignment::Count(Label label) const {
  return static_cast<std::size_t>(
      std::count(labels.begin(), labels.end(), label));
}

LabelAssignment AssignRpnLabels(std::span<const BBox> priors,
                                std::span<const BBox> gts,
                                bool force_best_match) {
  return AssignRpn(priors, gts, {}, force_best_match);
}

LabelAssignment AssignRpnLabels(const PriorLattice& lattice,
                                std::span<const BBox> gts,
                                bool force_best_match) {
  return AssignRpn(lattice.boxes, gts, lattice.excluded, force_best_match);
}

LabelAssignment AssignDetectionLabels(std::span<const BBox> proposals,
                                      std::span<const BBox> gts) {
  LabelAssignment out = EmptyAssignment(proposals.size());
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    const BestMatch best = BestGroundTruth(proposals[i], gts);
    out.max_iou[i] = best.iou;
    if (best.iou >= kDetectionPositiveIou) {
      MarkPositive(out, i, *best.gt, proposals[i], gts[*best.gt]);
    } else if (best.iou >= kDetectionAmbiguousIou) {
      out.labels[i] = Label::kAmbiguous;
      out.matched_gt[i] = best.gt;
    } else {
      out.labels[i] = Label::kBackground;
    }
  }
  return out;
}

void SamplerConfig::Validate() const {
  if (n_b < 0 || n_p < 0 || n_a < 0 || n_n < 0) {
    throw std::invalid_argument("sampler counts must be non-negative");
  }
}

std::vector<SampledIndex> SampleMinibatch(const LabelAssignment& assignment,
                                          Stage stage,
                                          const SamplerConfig& config,
                                          std::mt19937_64& rng) {
  config.Validate();

  std::vector<std::size_t> positives;
  std::vector<std::size_t> ambiguous;
  std::vector<std::size_t> backgrounds;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    switch (assignment.labels[i]) {
      case Label::kPositive:
        positives.push_back(i);
        break;
      case Label::kAmbiguous:
        if (stage == Stage::kDetection) ambiguous.push_back(i);
        break;
      case Label::kBackground:
        backgrounds.push_back(i);
        break;
      case Label::kIgnore:
        break;
    }
  }

  std::vector<SampledIndex> batch;
  auto draw = [&](const std::vector<std::size_t>& pool, std::size_t quota,
                  Label label) {
    std::vector<std::size_t> picked;
    std::sample(pool.begin(), pool.end(), std::back_inserter(picked), quota,
                rng);
    for (std::size_t i : picked) batch.push_back({i, label});
    return picked.size();
  };

  if (stage == Stage::kRpn) {
    const auto quota = static_cast<std::size_t>(config.n_b);
    const std::size_t got = draw(positives, quota, Label::kPositive);
    draw(backgrounds, quota + (quota - got), Label::kBackground);
  } else {
    const auto quota_p = static_cast<std::size_t>(config.n_p);
    const auto quota_a = static_cast<std::size_t>(config.n_a);
    const auto quota_n = static_cast<std::size_t>(config.n_n);
    const std::size_t got_p = draw(positives, quota_p, Label::kPositive);
    const std::size_t got_a = draw(ambiguous, quota_a, Label::kAmbiguous);
    draw(backgrounds, quota_n + (quota_p - got_p) + (quota_a - got_a),
         Label::kBackground);
  }
  return batch;
}

std::vector<SampledIndex> SampleMinibatch(const LabelAssignment& assignment,
                                          Stage stage,
                                          const SamplerConfig& config) {
  std::mt19937_64 rng(config.seed);
  return SampleMinibatch(assignment, stage, config, rng);
}

}  // namespace wordbox
