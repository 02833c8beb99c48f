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

#include "wordbox/synth.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace wordbox {
namespace {

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double MaxIou(const BBox& box, std::span<const BBox> gts) {
  double best = 0.0;
  for (const BBox& gt : gts) best = std::max(best, Iou(box, gt));
  return best;
}

}  // namespace

void SceneSpec::Validate() const {
  if (image_w < 1 || image_h < 1) {
    throw std::invalid_argument("scene image size must be positive");
  }
  if (min_words < 0 || max_words < min_words) {
    throw std::invalid_argument("scene word count range is empty");
  }
  if (!(min_height > 0.0) || max_height < min_height) {
    throw std::invalid_argument("scene word height range is empty");
  }
  if (!(min_ratio > 0.0) || max_ratio < min_ratio) {
    throw std::invalid_argument("scene word ratio range is empty");
  }
  if (!(max_gt_iou >= 0.0 && max_gt_iou < 1.0)) {
    throw std::invalid_argument("scene max_gt_iou must lie in [0, 1)");
  }
}

SynthScene GenerateScene(const SceneSpec& spec, std::mt19937_64& rng) {
  spec.Validate();
  SynthScene scene;
  scene.spec = spec;
  scene.seed = spec.seed;

  const int n_words =
      std::uniform_int_distribution<int>(spec.min_words, spec.max_words)(rng);
  for (int word = 0; word < n_words; ++word) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed;
         ++attempt) {
      const double h = Uniform(rng, spec.min_height, spec.max_height);
      const double ratio = Uniform(rng, spec.min_ratio, spec.max_ratio);
      const double w = h / ratio;
      if (w > spec.image_w || h > spec.image_h) continue;
      const double x1 = Uniform(rng, 0.0, spec.image_w - w);
      const double y1 = Uniform(rng, 0.0, spec.image_h - h);
      const BBox box{x1, y1, x1 + w, y1 + h};
      if (MaxIou(box, scene.gts) > spec.max_gt_iou) continue;
      scene.gts.push_back(box);
      placed = true;
    }
    if (!placed) {
      throw PlacementError("could not place word " + std::to_string(word + 1) +
                           " of " + std::to_string(n_words) + " after " +
                           std::to_string(kMaxPlacementAttempts) +
                           " attempts");
    }
  }
  return scene;
}

SynthScene GenerateScene(const SceneSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  return GenerateScene(spec, rng);
}

double OracleScore(const BBox& box, std::span<const BBox> gts,
                   double noise_sigma, std::mt19937_64& rng) {
  double score = MaxIou(box, gts);
  if (noise_sigma > 0.0) {
    score += std::normal_distribution<double>(0.0, noise_sigma)(rng);
  }
  return std::clamp(score, 0.0, 1.0);
}

std::vector<ScoredBox> JitterProposals(std::span<const BBox> gts,
                                       const JitterOptions& options,
                                       double image_w, double image_h,
                                       std::mt19937_64& rng) {
  if (options.jitter_frac < 0.0) {
    throw std::invalid_argument("jitter fraction must be non-negative");
  }
  const double f = options.jitter_frac;
  std::vector<ScoredBox> out;
  for (const BBox& gt : gts) {
    const double w = gt.width();
    const double h = gt.height();
    for (int k = 0; k < options.per_gt; ++k) {
      // Center shift and extent growth, applied to the corners directly.
      const double dx = Uniform(rng, -f, f) * w;
      const double dy = Uniform(rng, -f, f) * h;
      const double dw = Uniform(rng, -f, f) * w;
      const double dh = Uniform(rng, -f, f) * h;
      const BBox box = ClipToImage(
          BBox{gt.x1 + dx - dw / 2.0, gt.y1 + dy - dh / 2.0,
               gt.x2 + dx + dw / 2.0, gt.y2 + dy + dh / 2.0},
          image_w, image_h);
      out.push_back(
          {box, OracleScore(box, gts, options.noise_sigma, rng), kTextClass});
    }
  }
  for (int k = 0; k < options.n_negatives; ++k) {
    const BBox box = NormalizeCorners(
        Uniform(rng, 0.0, image_w), Uniform(rng, 0.0, image_h),
        Uniform(rng, 0.0, image_w), Uniform(rng, 0.0, image_h));
    out.push_back(
        {box, OracleScore(box, gts, options.noise_sigma, rng), kTextClass});
  }
  return out;
}

}  // namespace wordbox
