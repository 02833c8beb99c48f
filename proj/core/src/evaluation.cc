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

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "wordbox/suppression.h"

namespace wordbox {

std::vector<double> DefaultRecallThresholds() {
  std::vector<double> out;
  for (int pct = 10; pct <= 90; pct += 5) out.push_back(pct / 100.0);
  return out;
}

RecallCurve ComputeRecallCurve(
    std::span<const std::vector<ScoredBox>> proposals,
    std::span<const std::vector<BBox>> gts, std::size_t n,
    std::span<const double> thresholds) {
  if (proposals.size() != gts.size()) {
    throw std::invalid_argument("proposal and ground-truth image counts differ");
  }
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    if (!(thresholds[t] > 0.0) || thresholds[t] > 1.0 ||
        (t > 0 && !(thresholds[t] > thresholds[t - 1]))) {
      throw std::invalid_argument(
          "recall thresholds must be ascending within (0, 1]");
    }
  }

  // Best IoU reached by any top-n proposal, per ground truth.
  std::vector<double> best;
  for (std::size_t img = 0; img < gts.size(); ++img) {
    const std::vector<ScoredBox> top = TopK(proposals[img], n);
    for (const BBox& gt : gts[img]) {
      double b = 0.0;
      for (const ScoredBox& p : top) b = std::max(b, Iou(p.box, gt));
      best.push_back(b);
    }
  }
  if (best.empty()) {
    throw std::invalid_argument("recall needs at least one ground truth");
  }

  RecallCurve curve;
  curve.n_proposals = n;
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  for (double t : thresholds) {
    std::size_t covered = 0;
    for (double b : best) covered += b >= t ? 1 : 0;
    curve.recall.push_back(static_cast<double>(covered) /
                           static_cast<double>(best.size()));
  }
  return curve;
}

Prf PrfFromCounts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Prf out;
  out.tp = tp;
  out.fp = fp;
  out.fn = fn;
  const std::size_t detections = tp + fp;
  const std::size_t gts = tp + fn;
  if (detections > 0) {
    out.precision = static_cast<double>(tp) / static_cast<double>(detections);
  } else {
    out.precision = gts == 0 ? 1.0 : 0.0;
  }
  out.recall =
      gts > 0 ? static_cast<double>(tp) / static_cast<double>(gts) : 1.0;
  const double sum = out.precision + out.recall;
  out.f_measure = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

Prf MatchDetections(std::span<const ScoredBox> detections,
                    std::span<const BBox> gts, double match_iou) {
  std::vector<bool> taken(gts.size(), false);
  std::size_t tp = 0;
  for (std::size_t idx : RankOrder(detections)) {
    std::optional<std::size_t> best;
    double best_iou = 0.0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (taken[g]) continue;
      const double iou = Iou(detections[idx].box, gts[g]);
      if (!best || iou > best_iou) {
        best = g;
        best_iou = iou;
      }
    }
    if (best && best_iou >= match_iou) {
      taken[*best] = true;
      ++tp;
    }
  }
  return PrfFromCounts(tp, detections.size() - tp, gts.size() - tp);
}

Prf AggregatePrf(std::span<const Prf> per_image) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const Prf& p : per_image) {
    tp += p.tp;
    fp += p.fp;
    fn += p.fn;
  }
  return PrfFromCounts(tp, fp, fn);
}

ConfusionRates ComputeConfusionRates(const std::vector<bool>& predicted,
                                     const std::vector<bool>& actual) {
  if (predicted.size() != actual.size()) {
    throw std::invalid_argument("predicted and actual lists differ in length");
  }
  std::size_t pos = 0, neg = 0, tp = 0, fp = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i]) {
      ++pos;
      tp += predicted[i] ? 1 : 0;
    } else {
      ++neg;
      fp += predicted[i] ? 1 : 0;
    }
  }
  if (pos == 0) throw std::invalid_argument("no actual positives");
  if (neg == 0) throw std::invalid_argument("no actual negatives");
  return ConfusionRates{static_cast<double>(tp) / static_cast<double>(pos),
                        static_cast<double>(fp) / static_cast<double>(neg)};
}

}  // namespace wordbox
