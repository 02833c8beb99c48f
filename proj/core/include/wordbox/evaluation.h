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

#ifndef WORDBOX_EVALUATION_H_
#define WORDBOX_EVALUATION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "wordbox/geometry.h"

namespace wordbox {

inline constexpr double kMatchIou = 0.5;

struct RecallCurve {
  std::vector<double> thresholds;  // ascending, in (0, 1]
  std::vector<double> recall;      // same length, non-increasing
  std::size_t n_proposals = 0;
};

// 0.10, 0.15, ..., 0.90.
std::vector<double> DefaultRecallThresholds();

// For each threshold t: the fraction of ground truths, over all images,
// covered by at least one of the image's top-`n` proposals with IoU >= t.
// Throws std::invalid_argument when the image lists differ in length, the
// thresholds are not ascending within (0, 1], or there are no ground truths.
RecallCurve ComputeRecallCurve(
    std::span<const std::vector<ScoredBox>> proposals,
    std::span<const std::vector<BBox>> gts, std::size_t n,
    std::span<const double> thresholds);

// Precision, recall and F-measure from one-to-one matching.
struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

// Derives P, R, F from counts. Empty detections give P = 0 unless there are
// no ground truths either; 0/0 recall is 1.
Prf PrfFromCounts(std::size_t tp, std::size_t fp, std::size_t fn);

// Greedy one-to-one matching in rank order: each detection takes the
// unmatched ground truth of highest IoU (ties: lowest index) when that IoU is
// at least `match_iou`. Simplified stand-in for the ICDAR protocols.
Prf MatchDetections(std::span<const ScoredBox> detections,
                    std::span<const BBox> gts, double match_iou = kMatchIou);

// Sums counts of per-image results and recomputes the ratios.
Prf AggregatePrf(std::span<const Prf> per_image);

struct ConfusionRates {
  double tp_rate = 0.0;
  double fp_rate = 0.0;
};

// tp_rate = #(pred & actual) / #actual, fp_rate = #(pred & !actual) /
// #!actual. Throws std::invalid_argument on misaligned lists or when either
// actual class is empty.
ConfusionRates ComputeConfusionRates(const std::vector<bool>& predicted,
                                     const std::vector<bool>& actual);

}  // namespace wordbox

#endif  // WORDBOX_EVALUATION_H_
