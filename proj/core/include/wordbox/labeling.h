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

#ifndef WORDBOX_LABELING_H_
#define WORDBOX_LABELING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "wordbox/codec.h"
#include "wordbox/geometry.h"
#include "wordbox/priors.h"

namespace wordbox {

enum class Label : std::uint8_t {
  kBackground,
  kAmbiguous,
  kPositive,
  kIgnore,
};

std::string_view LabelName(Label label);

// RPN stage thresholds on max-IoU.
inline constexpr double kRpnPositiveIou = 0.5;    // positive when > 0.5
inline constexpr double kRpnBackgroundIou = 0.3;  // background when < 0.3

// Detection stage thresholds on max-IoU.
inline constexpr double kDetectionPositiveIou = 0.5;   // positive when >= 0.5
inline constexpr double kDetectionAmbiguousIou = 0.2;  // ambiguous in [0.2, 0.5)

// Per-box labels. `matched_gt` is set for positive and ambiguous boxes;
// `targets` holds regression offsets for positive boxes only.
struct LabelAssignment {
  std::vector<Label> labels;
  std::vector<std::optional<std::size_t>> matched_gt;
  std::vector<std::optional<RegressionOffsets>> targets;
  std::vector<double> max_iou;

  std::size_t size() const { return labels.size(); }
  std::size_t Count(Label label) const;
};

// Labels priors for the proposal stage: positive above 0.5 max-IoU,
// background below 0.3, ignore in between. With `force_best_match`, the
// highest-IoU prior of every ground truth (ties: lowest prior index) is also
// made positive when that IoU is above zero.
LabelAssignment AssignRpnLabels(std::span<const BBox> priors,
                                std::span<const BBox> gts,
                                bool force_best_match = true);

// Same, honoring the lattice's cross-boundary markers: excluded priors are
// labeled ignore and never forced positive.
LabelAssignment AssignRpnLabels(const PriorLattice& lattice,
                                std::span<const BBox> gts,
                                bool force_best_match = true);

// Labels proposals for the detection stage with the ambiguous-text class:
// positive at max-IoU >= 0.5, ambiguous in [0.2, 0.5), background below 0.2.
LabelAssignment AssignDetectionLabels(std::span<const BBox> proposals,
                                      std::span<const BBox> gts);

enum class Stage { kRpn, kDetection };

struct SamplerConfig {
  int n_b = 128;  // proposal stage: positives and backgrounds each
  int n_p = 64;   // detection stage positives
  int n_a = 32;   // detection stage ambiguous
  int n_n = 160;  // detection stage backgrounds
  std::uint64_t seed = 0;

  void Validate() const;
};

struct SampledIndex {
  std::size_t index;
  Label label;

  friend bool operator==(const SampledIndex&, const SampledIndex&) = default;
};

// Draws a minibatch without replacement. Classes short of their quota are
// taken whole and the shortfall is drawn from background. Ignore boxes are
// never sampled. Output is grouped positive, ambiguous, background, each in
// ascending index order.
std::vector<SampledIndex> SampleMinibatch(const LabelAssignment& assignment,
                                          Stage stage,
                                          const SamplerConfig& config,
                                          std::mt19937_64& rng);

// Seeds a fresh generator from config.seed.
std::vector<SampledIndex> SampleMinibatch(const LabelAssignment& assignment,
                                          Stage stage,
                                          const SamplerConfig& config);

}  // namespace wordbox

#endif  // WORDBOX_LABELING_H_
