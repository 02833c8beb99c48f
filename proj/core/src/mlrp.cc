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

#include "wordbox/mlrp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wordbox {
namespace {

void CheckDims(int channels, int height, int width) {
  if (channels < 1 || height < 1 || width < 1) {
    throw std::invalid_argument("tensor dimensions must be at least 1");
  }
}

// Cell range covering [lo, hi] pixels along an axis of `cells` cells.
CellRange MapAxis(double lo, double hi, double stride, int cells) {
  const double first = std::floor(lo / stride);
  const double last = std::ceil(hi / stride);
  if (last <= 0.0 || first >= cells) {
    throw std::invalid_argument("roi lies outside the feature grid");
  }
  int begin = static_cast<int>(std::max(first, 0.0));
  int end = static_cast<int>(std::min(last, static_cast<double>(cells)));
  if (end <= begin) end = begin + 1;
  return CellRange{begin, end};
}

}  // namespace

Tensor3::Tensor3(int channels, int height, int width, double fill)
    : channels_(channels), height_(height), width_(width) {
  CheckDims(channels, height, width);
  values_.assign(static_cast<std::size_t>(channels) * height * width, fill);
}

Tensor3::Tensor3(int channels, int height, int width,
                 std::vector<double> values)
    : channels_(channels),
      height_(height),
      width_(width),
      values_(std::move(values)) {
  CheckDims(channels, height, width);
  if (values_.size() != static_cast<std::size_t>(channels) * height * width) {
    throw std::invalid_argument("tensor value count does not match shape");
  }
}

void FeatureGrid::Validate() const {
  CheckDims(data.channels(), data.height(), data.width());
  if (!(stride > 0.0) || !std::isfinite(stride)) {
    throw std::invalid_argument("grid stride must be positive");
  }
  for (double v : data.values()) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("grid values must be finite");
    }
  }
}

void FusionWeights::Validate() const {
  if (out_channels < 1 || in_channels < 1) {
    throw std::invalid_argument("fusion weights need at least one channel");
  }
  if (matrix.size() != static_cast<std::size_t>(out_channels) * in_channels) {
    throw std::invalid_argument("fusion matrix size does not match shape");
  }
  if (bias && bias->size() != static_cast<std::size_t>(out_channels)) {
    throw std::invalid_argument("fusion bias size does not match C_out");
  }
}

GridRegion MapRoiToGrid(const FeatureGrid& grid, const BBox& roi) {
  if (!roi.valid() || !(roi.area() > 0.0)) {
    throw std::invalid_argument("roi must have positive area");
  }
  return GridRegion{
      MapAxis(roi.y1, roi.y2, grid.stride, grid.data.height()),
      MapAxis(roi.x1, roi.x2, grid.stride, grid.data.width())};
}

CellRange AdaptiveBin(int index, int extent, int bins) {
  const long long lo = static_cast<long long>(index) * extent;
  const long long hi = static_cast<long long>(index + 1) * extent;
  return CellRange{static_cast<int>(lo / bins),
                   static_cast<int>((hi + bins - 1) / bins)};
}

PooledFeature RoiMaxPool(const FeatureGrid& grid, const BBox& roi, int out_h,
                         int out_w) {
  if (out_h < 1 || out_w < 1) {
    throw std::invalid_argument("pooled size must be at least 1x1");
  }
  const GridRegion region = MapRoiToGrid(grid, roi);
  const int channels = grid.data.channels();
  PooledFeature out(channels, out_h, out_w);

  for (int bi = 0; bi < out_h; ++bi) {
    const CellRange rows = AdaptiveBin(bi, region.rows.size(), out_h);
    for (int bj = 0; bj < out_w; ++bj) {
      const CellRange cols = AdaptiveBin(bj, region.cols.size(), out_w);
      for (int c = 0; c < channels; ++c) {
        double best = -std::numeric_limits<double>::infinity();
        for (int y = rows.begin; y < rows.end; ++y) {
          for (int x = cols.begin; x < cols.end; ++x) {
            best = std::max(best, grid.data.at(c, region.rows.begin + y,
                                               region.cols.begin + x));
          }
        }
        out.at(c, bi, bj) = best;
      }
    }
  }
  return out;
}

PooledFeature ConcatChannels(std::span<const PooledFeature> parts) {
  if (parts.empty()) throw std::invalid_argument("nothing to concatenate");
  const int height = parts.front().height();
  const int width = parts.front().width();
  int channels = 0;
  std::vector<double> values;
  for (const PooledFeature& part : parts) {
    if (part.height() != height || part.width() != width) {
      throw std::invalid_argument("pooled features differ in spatial size");
    }
    channels += part.channels();
    values.insert(values.end(), part.values().begin(), part.values().end());
  }
  return PooledFeature(channels, height, width, std::move(values));
}

PooledFeature ApplyFusion(const PooledFeature& input,
                          const FusionWeights& weights) {
  weights.Validate();
  if (weights.in_channels != input.channels()) {
    throw std::invalid_argument(
        "fusion expects " + std::to_string(weights.in_channels) +
        " input channels, got " + std::to_string(input.channels()));
  }
  PooledFeature out(weights.out_channels, input.height(), input.width());
  for (int o = 0; o < weights.out_channels; ++o) {
    const double b = weights.bias ? (*weights.bias)[o] : 0.0;
    for (int y = 0; y < input.height(); ++y) {
      for (int x = 0; x < input.width(); ++x) {
        double acc = 0.0;
        for (int i = 0; i < weights.in_channels; ++i) {
          acc += weights.weight(o, i) * input.at(i, y, x);
        }
        out.at(o, y, x) = acc + b;
      }
    }
  }
  return out;
}

PooledFeature FuseMultiLevel(std::span<const FeatureGrid> grids,
                             const BBox& roi, int out_h, int out_w,
                             const FusionWeights& weights) {
  if (grids.size() != 2) {
    throw std::invalid_argument("multi-level pooling expects two grids");
  }
  const int concat_channels =
      grids[0].data.channels() + grids[1].data.channels();
  if (weights.in_channels != concat_channels) {
    throw std::invalid_argument(
        "fusion expects " + std::to_string(weights.in_channels) +
        " input channels, pooled concat has " +
        std::to_string(concat_channels));
  }
  const PooledFeature pooled[] = {RoiMaxPool(grids[0], roi, out_h, out_w),
                                  RoiMaxPool(grids[1], roi, out_h, out_w)};
  return ApplyFusion(ConcatChannels(pooled), weights);
}

FusionGradient FusionWeightGradient(const PooledFeature& input,
                                    const PooledFeature& upstream) {
  if (input.height() != upstream.height() ||
      input.width() != upstream.width()) {
    throw std::invalid_argument("upstream gradient has the wrong shape");
  }
  const int in_c = input.channels();
  const int out_c = upstream.channels();
  FusionGradient grad;
  grad.matrix.assign(static_cast<std::size_t>(out_c) * in_c, 0.0);
  grad.bias.assign(out_c, 0.0);
  for (int o = 0; o < out_c; ++o) {
    for (int y = 0; y < input.height(); ++y) {
      for (int x = 0; x < input.width(); ++x) {
        const double g = upstream.at(o, y, x);
        grad.bias[o] += g;
        for (int i = 0; i < in_c; ++i) {
          grad.matrix[static_cast<std::size_t>(o) * in_c + i] +=
              g * input.at(i, y, x);
        }
      }
    }
  }
  return grad;
}

}  // namespace wordbox
