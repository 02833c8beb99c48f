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

#include "wordbox/pipeline.h"

#include <random>

#include "wordbox/codec.h"
#include "wordbox/priors.h"
#include "wordbox/suppression.h"

namespace wordbox {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Refines and scores every box of `boxes` against the scene.
std::vector<ScoredBox> RefineAndScore(std::span<const BBox> boxes,
                                      const std::vector<BBox>& gts,
                                      const PipelineOptions& options,
                                      double image_w, double image_h,
                                      std::mt19937_64& rng) {
  std::vector<ScoredBox> out;
  out.reserve(boxes.size());
  for (const BBox& box : boxes) {
    const BBox refined =
        OracleRefine(box, gts, options.refine_gain, options.regression_noise,
                     image_w, image_h, rng);
    out.push_back({refined, OracleScore(refined, gts, options.noise_sigma, rng),
                   kTextClass});
  }
  return out;
}

}  // namespace

std::uint64_t SceneSeed(std::uint64_t run_seed, int index) {
  return SplitMix64(run_seed ^ SplitMix64(static_cast<std::uint64_t>(index)));
}

BBox OracleRefine(const BBox& box, const std::vector<BBox>& gts, double gain,
                  double noise, double image_w, double image_h,
                  std::mt19937_64& rng) {
  double best_iou = 0.0;
  const BBox* best = nullptr;
  for (const BBox& gt : gts) {
    const double iou = Iou(box, gt);
    if (iou > best_iou) {
      best_iou = iou;
      best = &gt;
    }
  }
  if (best == nullptr || !(box.area() > 0.0) || !(best->area() > 0.0)) {
    return box;
  }

  RegressionOffsets t = Encode(box, *best);
  t.tx *= gain;
  t.ty *= gain;
  t.tw *= gain;
  t.th *= gain;
  if (noise > 0.0) {
    std::normal_distribution<double> n(0.0, noise);
    t.tx += n(rng);
    t.ty += n(rng);
    t.tw += n(rng);
    t.th += n(rng);
  }
  return ClipToImage(Decode(t, box), image_w, image_h);
}

SceneResult RunScene(const PipelineOptions& options, std::uint64_t scene_seed) {
  const Config& config = options.config;
  std::mt19937_64 rng(scene_seed);

  SceneSpec spec = config.synth;
  spec.seed = scene_seed;
  SceneResult result;
  result.seed = scene_seed;
  result.gts = GenerateScene(spec, rng).gts;

  const double image_w = spec.image_w;
  const double image_h = spec.image_h;

  // Proposal stage.
  const GridSize grid = GridForImage(image_w, image_h, config.priors.stride);
  const PriorLattice lattice =
      GeneratePriors(grid.rows, grid.cols, image_w, image_h, config.priors);
  const std::vector<ScoredBox> scored =
      RefineAndScore(lattice.boxes, result.gts, options, image_w, image_h, rng);
  const std::size_t keep = std::min(config.suppression.top_k, options.top_n);
  result.proposals = Nms(scored, config.suppression.nms_iou, keep);

  // Detection stage: one candidate set per simulated model iteration.
  std::vector<BBox> proposal_boxes;
  proposal_boxes.reserve(result.proposals.size());
  for (const ScoredBox& p : result.proposals) proposal_boxes.push_back(p.box);

  std::vector<DetectionSet> sets;
  for (int t = 0; t < options.iterations; ++t) {
    std::vector<ScoredBox> candidates = RefineAndScore(
        proposal_boxes, result.gts, options, image_w, image_h, rng);
    std::vector<ScoredBox> jittered =
        JitterProposals(result.gts, options.jitter, image_w, image_h, rng);
    candidates.insert(candidates.end(), jittered.begin(), jittered.end());

    DetectionSet set;
    set.iteration = t + 1;
    for (const ScoredBox& c : candidates) {
      if (c.score >= options.text_score) set.items.push_back(c);
    }
    sets.push_back(std::move(set));
  }

  if (!sets.empty()) {
    const DetectionSet voted =
        IterativeVote(sets, config.suppression.vote_iou);
    result.detections =
        FilterNested(voted.items, config.suppression.nested_eps);
  }
  result.prf =
      MatchDetections(result.detections, result.gts, config.eval.match_iou);
  return result;
}

PipelineResult RunPipeline(const PipelineOptions& options) {
  if (options.scenes < 1) {
    throw std::invalid_argument("pipeline needs at least one scene");
  }
  PipelineResult out;
  out.scenes.reserve(options.scenes);
  for (int i = 0; i < options.scenes; ++i) {
    out.scenes.push_back(RunScene(options, SceneSeed(options.seed, i)));
  }

  std::vector<std::vector<ScoredBox>> proposals;
  std::vector<std::vector<BBox>> gts;
  std::vector<Prf> per_scene;
  for (const SceneResult& s : out.scenes) {
    proposals.push_back(s.proposals);
    gts.push_back(s.gts);
    per_scene.push_back(s.prf);
  }
  out.recall = ComputeRecallCurve(proposals, gts, options.top_n,
                                  options.config.eval.thresholds);
  const double match[] = {options.config.eval.match_iou};
  out.recall_at_match =
      ComputeRecallCurve(proposals, gts, options.top_n, match).recall.front();
  out.prf = AggregatePrf(per_scene);
  return out;
}

}  // namespace wordbox
