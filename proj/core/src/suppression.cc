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

#include "wordbox/suppression.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wordbox {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

bool RanksBefore(const ScoredBox& a, std::size_t a_index, const ScoredBox& b,
                 std::size_t b_index) {
  if (a.score != b.score) return a.score > b.score;
  const double area_a = a.box.area();
  const double area_b = b.box.area();
  if (area_a != area_b) return area_a > area_b;
  return a_index < b_index;
}

std::vector<std::size_t> RankOrder(std::span<const ScoredBox> boxes) {
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return RanksBefore(boxes[a], a, boxes[b], b);
  });
  return order;
}

std::vector<ScoredBox> Nms(std::span<const ScoredBox> boxes,
                           double iou_threshold,
                           std::optional<std::size_t> max_keep) {
  if (!(iou_threshold > 0.0) || iou_threshold > 1.0) {
    throw std::invalid_argument("NMS IoU threshold must be in (0, 1]");
  }
  const std::size_t limit = max_keep.value_or(boxes.size());
  std::vector<ScoredBox> kept;
  if (limit == 0) return kept;

  for (std::size_t idx : RankOrder(boxes)) {
    const ScoredBox& candidate = boxes[idx];
    const bool suppressed =
        std::any_of(kept.begin(), kept.end(), [&](const ScoredBox& k) {
          return Iou(k.box, candidate.box) > iou_threshold;
        });
    if (suppressed) continue;
    kept.push_back(candidate);
    if (kept.size() == limit) break;
  }
  return kept;
}

std::vector<ScoredBox> TopK(std::span<const ScoredBox> boxes, std::size_t k) {
  std::vector<std::size_t> order = RankOrder(boxes);
  order.resize(std::min(k, order.size()));
  std::vector<ScoredBox> out;
  out.reserve(order.size());
  for (std::size_t idx : order) out.push_back(boxes[idx]);
  return out;
}

DetectionSet IterativeVote(std::span<const DetectionSet> sets,
                           double iou_threshold) {
  if (sets.empty()) {
    throw std::invalid_argument("voting needs at least one detection set");
  }
  std::vector<ScoredBox> merged;
  for (const DetectionSet& set : sets) {
    merged.insert(merged.end(), set.items.begin(), set.items.end());
  }
  return DetectionSet{Nms(merged, iou_threshold), std::nullopt};
}

std::vector<ScoredBox> FilterNested(std::span<const ScoredBox> boxes,
                                    double eps) {
  const std::size_t n = boxes.size();
  DisjointSets components(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (Contains(boxes[i].box, boxes[j].box, eps) ||
          Contains(boxes[j].box, boxes[i].box, eps)) {
        components.Union(i, j);
      }
    }
  }

  // Walking in rank order, the first member seen of each component wins.
  std::vector<bool> claimed(n, false);
  std::vector<ScoredBox> out;
  for (std::size_t idx : RankOrder(boxes)) {
    const std::size_t root = components.Find(idx);
    if (claimed[root]) continue;
    claimed[root] = true;
    out.push_back(boxes[idx]);
  }
  return out;
}

}  // namespace wordbox
