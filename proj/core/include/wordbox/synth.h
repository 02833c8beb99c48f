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

#ifndef WORDBOX_SYNTH_H_
#define WORDBOX_SYNTH_H_

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "wordbox/geometry.h"

namespace wordbox {

// Random word layouts. Word height and the h/w ratio are drawn uniformly
// from their ranges, so most words come out wider than tall.
struct SceneSpec {
  int image_w = 640;
  int image_h = 480;
  int min_words = 3;
  int max_words = 12;
  double min_height = 16.0;
  double max_height = 96.0;
  double min_ratio = 0.2;
  double max_ratio = 1.5;
  double max_gt_iou = 0.1;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct SynthScene {
  std::vector<BBox> gts;
  SceneSpec spec;
  std::uint64_t seed = 0;
};

// Consecutive rejected draws tolerated per word before giving up.
inline constexpr int kMaxPlacementAttempts = 1000;

class PlacementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection-samples in-bounds word boxes whose pairwise IoU stays at or below
// spec.max_gt_iou. Throws PlacementError when a word cannot be placed.
SynthScene GenerateScene(const SceneSpec& spec, std::mt19937_64& rng);
SynthScene GenerateScene(const SceneSpec& spec);

// Max-IoU over `gts` plus N(0, noise_sigma) noise, clamped to [0, 1]. The
// generator is only drawn from when noise_sigma > 0.
double OracleScore(const BBox& box, std::span<const BBox> gts,
                   double noise_sigma, std::mt19937_64& rng);

struct JitterOptions {
  int per_gt = 4;
  double jitter_frac = 0.05;
  int n_negatives = 8;
  double noise_sigma = 0.0;
};

// Emits `per_gt` perturbed copies of every ground truth (center shifted and
// extents scaled uniformly within +-jitter_frac of the extent, clipped to the
// image) plus `n_negatives` uniform in-bounds boxes, all scored with
// OracleScore.
std::vector<ScoredBox> JitterProposals(std::span<const BBox> gts,
                                       const JitterOptions& options,
                                       double image_w, double image_h,
                                       std::mt19937_64& rng);

}  // namespace wordbox

#endif  // WORDBOX_SYNTH_H_
