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

#ifndef WORDBOX_SUPPRESSION_H_
#define WORDBOX_SUPPRESSION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wordbox/geometry.h"

namespace wordbox {

inline constexpr double kProposalNmsIou = 0.7;
inline constexpr double kVoteNmsIou = 0.3;
inline constexpr std::size_t kProposalTopK = 2000;
inline constexpr std::size_t kEvalTopN = 300;

// Detection candidates of one model iteration.
struct DetectionSet {
  std::vector<ScoredBox> items;
  std::optional<int> iteration;
};

// Strict weak order used for every score ranking: higher score first, then
// larger area, then earlier input position.
bool RanksBefore(const ScoredBox& a, std::size_t a_index, const ScoredBox& b,
                 std::size_t b_index);

// Input indices sorted by RanksBefore.
std::vector<std::size_t> RankOrder(std::span<const ScoredBox> boxes);

// Greedy non-maximum suppression. A box is dropped when its IoU with a kept,
// higher-ranked box is strictly greater than `iou_threshold`. Output is in
// rank order. `max_keep` stops once that many boxes are kept, which equals
// TopK(Nms(boxes), max_keep). Throws std::invalid_argument unless the
// threshold lies in (0, 1].
std::vector<ScoredBox> Nms(std::span<const ScoredBox> boxes,
                           double iou_threshold,
                           std::optional<std::size_t> max_keep = std::nullopt);

// The k highest-ranked boxes (all of them when k exceeds the count).
std::vector<ScoredBox> TopK(std::span<const ScoredBox> boxes, std::size_t k);

// Merges the candidate sets of several iterations and suppresses the union
// at `iou_threshold`. Throws std::invalid_argument for an empty list.
DetectionSet IterativeVote(std::span<const DetectionSet> sets,
                           double iou_threshold = kVoteNmsIou);

// Groups boxes into connected components of the symmetric containment
// relation (Contains with `eps`) and keeps the top-ranked box of each
// component. Output is in rank order.
std::vector<ScoredBox> FilterNested(std::span<const ScoredBox> boxes,
                                    double eps = 0.0);

}  // namespace wordbox

#endif  // WORDBOX_SUPPRESSION_H_
