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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>
#include "wordbox/geometry.h"
#include "wordbox/mlrp.h"
#include "wordbox/priors.h"
#include "wordbox/suppression.h"
#include "wordbox/synth.h"

namespace wordbox {
namespace {

std::vector<ScoredBox> RandomBoxes(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, 600.0);
  std::uniform_real_distribution<double> size(8.0, 120.0);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::vector<ScoredBox> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double x = pos(rng), y = pos(rng);
    out.push_back({BBox{x, y, x + size(rng), y + size(rng)}, score(rng)});
  }
  return out;
}

void BM_Iou(benchmark::State& state) {
  const auto boxes = RandomBoxes(1024, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Iou(boxes[i & 1023].box, boxes[(i + 7) & 1023].box));
    ++i;
  }
}
BENCHMARK(BM_Iou);

void BM_GeneratePriors(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(GeneratePriors(30, 40, 640, 480));
  }
  state.SetItemsProcessed(state.iterations() * 30 * 40 * 24);
}
BENCHMARK(BM_GeneratePriors);

void BM_Nms(benchmark::State& state) {
  const auto boxes = RandomBoxes(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Nms(boxes, kProposalNmsIou));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Nms)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

// Proposal-stage suppression over a full prior lattice with early stop.
void BM_NmsTopK(benchmark::State& state) {
  const PriorLattice lattice = GeneratePriors(30, 40, 640, 480);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::vector<ScoredBox> scored;
  for (const BBox& b : lattice.boxes) scored.push_back({b, score(rng)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(Nms(scored, kProposalNmsIou, kEvalTopN));
  }
}
BENCHMARK(BM_NmsTopK)->Unit(benchmark::kMillisecond);

void BM_RoiMaxPool(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  FeatureGrid grid{Tensor3(c, 60, 80), kFineStride};
  std::mt19937_64 rng(4);
  std::normal_distribution<double> v;
  for (double& x : grid.data.values()) x = v(rng);
  const BBox roi{40, 60, 300, 140};
  for (auto _ : state) {
    benchmark::DoNotOptimize(RoiMaxPool(grid, roi));
  }
}
BENCHMARK(BM_RoiMaxPool)->Arg(8)->Arg(64)->Arg(256);

void BM_GenerateScene(benchmark::State& state) {
  SceneSpec spec;
  for (auto _ : state) {
    spec.seed++;
    benchmark::DoNotOptimize(GenerateScene(spec));
  }
}
BENCHMARK(BM_GenerateScene);

}  // namespace
}  // namespace wordbox

BENCHMARK_MAIN();
