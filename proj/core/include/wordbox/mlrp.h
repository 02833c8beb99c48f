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

#ifndef WORDBOX_MLRP_H_
#define WORDBOX_MLRP_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wordbox/geometry.h"

namespace wordbox {

inline constexpr int kPooledSize = 7;
inline constexpr double kFineStride = 8.0;
inline constexpr double kCoarseStride = 16.0;

// Channel-major C x H x W tensor of finite values.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int channels, int height, int width, double fill = 0.0);
  Tensor3(int channels, int height, int width, std::vector<double> values);

  int channels() const { return channels_; }
  int height() const { return height_; }
  int width() const { return width_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double at(int c, int y, int x) const { return values_[Offset(c, y, x)]; }
  double& at(int c, int y, int x) { return values_[Offset(c, y, x)]; }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t Offset(int c, int y, int x) const {
    return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
  }

  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> values_;
};

// A feature map sampled every `stride` image pixels.
struct FeatureGrid {
  Tensor3 data;
  double stride = kCoarseStride;

  // Throws std::invalid_argument on empty dimensions, a non-positive stride
  // or non-finite values.
  void Validate() const;
};

using PooledFeature = Tensor3;

// Linear 1x1 channel map: out[o] = sum_i matrix[o][i] * in[i] (+ bias[o]).
struct FusionWeights {
  int out_channels = 0;
  int in_channels = 0;
  std::vector<double> matrix;  // row-major out_channels x in_channels
  std::optional<std::vector<double>> bias;

  double weight(int o, int i) const {
    return matrix[static_cast<std::size_t>(o) * in_channels + i];
  }
  void Validate() const;
};

// Half-open cell range [begin, end) along one axis.
struct CellRange {
  int begin;
  int end;

  int size() const { return end - begin; }
  friend bool operator==(const CellRange&, const CellRange&) = default;
};

struct GridRegion {
  CellRange rows;
  CellRange cols;
};

// Maps an image-pixel roi to grid cells with floor(x1 / stride) and
// ceil(x2 / stride), clamped to the grid and at least one cell per axis.
// Throws std::invalid_argument when the roi has no positive area or lies
// entirely outside the grid.
GridRegion MapRoiToGrid(const FeatureGrid& grid, const BBox& roi);

// Bin `index` of `bins` over `extent` cells:
// [floor(index * extent / bins), ceil((index + 1) * extent / bins)).
CellRange AdaptiveBin(int index, int extent, int bins);

// Adaptive ROI max pooling to channels x out_h x out_w.
PooledFeature RoiMaxPool(const FeatureGrid& grid, const BBox& roi,
                         int out_h = kPooledSize, int out_w = kPooledSize);

// Stacks pooled features along channels. All inputs share spatial size.
PooledFeature ConcatChannels(std::span<const PooledFeature> parts);

// Applies the 1x1 linear map at every spatial cell.
PooledFeature ApplyFusion(const PooledFeature& input,
                          const FusionWeights& weights);

// Pools the roi on each grid at its own stride, concatenates along channels
// and fuses. Throws std::invalid_argument on a channel mismatch.
PooledFeature FuseMultiLevel(std::span<const FeatureGrid> grids,
                             const BBox& roi, int out_h, int out_w,
                             const FusionWeights& weights);

// Gradient of sum(upstream * ApplyFusion(input, W)) with respect to W.
struct FusionGradient {
  std::vector<double> matrix;  // out_channels x in_channels
  std::vector<double> bias;    // out_channels
};
FusionGradient FusionWeightGradient(const PooledFeature& input,
                                    const PooledFeature& upstream);

}  // namespace wordbox

#endif  // WORDBOX_MLRP_H_
