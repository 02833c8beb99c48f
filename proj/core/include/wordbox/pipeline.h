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

#ifndef WORDBOX_PIPELINE_H_
#define WORDBOX_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wordbox/config.h"
#include "wordbox/evaluation.h"
#include "wordbox/geometry.h"
#include "wordbox/synth.h"

namespace wordbox {

// End-to-end synthetic run: scene -> priors -> oracle refinement and scoring
// -> NMS -> top-N proposals -> per-iteration detection sets -> voting ->
// nested filtering -> evaluation.
//
// The oracle regressor stands in for the learned box regression: a box
// overlapping some ground truth moves `refine_gain` of the way (in offset
// space) toward its best-matching ground truth, plus N(0, regression_noise)
// on every offset.
struct PipelineOptions {
  std::uint64_t seed = 0;
  int scenes = 50;
  std::size_t top_n = kEvalTopN;
  double noise_sigma = 0.0;
  double regression_noise = 0.0;
  double refine_gain = 0.75;
  int iterations = 3;
  // Detections scoring below this are not reported as text.
  double text_score = 0.5;
  JitterOptions jitter;
  Config config;
};

struct SceneResult {
  std::uint64_t seed = 0;
  std::vector<BBox> gts;
  std::vector<ScoredBox> proposals;   // top-N after proposal NMS
  std::vector<ScoredBox> detections;  // after voting and filtering
  Prf prf;
};

struct PipelineResult {
  std::vector<SceneResult> scenes;
  RecallCurve recall;          // over config.eval.thresholds at top_n
  double recall_at_match = 0;  // at config.eval.match_iou
  Prf prf;                     // aggregated over scenes
};

// Seed of scene `index` derived from the run seed.
std::uint64_t SceneSeed(std::uint64_t run_seed, int index);

// Moves `box` toward its best-matching ground truth as described above.
// Boxes without overlap are returned unchanged.
BBox OracleRefine(const BBox& box, const std::vector<BBox>& gts, double gain,
                  double noise, double image_w, double image_h,
                  std::mt19937_64& rng);

SceneResult RunScene(const PipelineOptions& options, std::uint64_t scene_seed);

PipelineResult RunPipeline(const PipelineOptions& options);

}  // namespace wordbox

#endif  // WORDBOX_PIPELINE_H_
