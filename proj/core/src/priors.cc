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

#include "wordbox/priors.h"

#include <cmath>
#include <stdexcept>

namespace wordbox {

void PriorConfig::Validate() const {
  if (scales.empty()) throw std::invalid_argument("prior scales are empty");
  if (aspect_ratios.empty()) {
    throw std::invalid_argument("prior aspect ratios are empty");
  }
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("prior scales must be positive");
    }
  }
  for (double a : aspect_ratios) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("prior aspect ratios must be positive");
    }
  }
  if (!(stride > 0.0) || !std::isfinite(stride)) {
    throw std::invalid_argument("prior stride must be positive");
  }
}

PriorShape ShapeFor(double scale, double aspect_ratio) {
  const double root = std::sqrt(aspect_ratio);
  return PriorShape{scale / root, scale * root};
}

PriorLattice GeneratePriors(int grid_m, int grid_n, double image_w,
                            double image_h, const PriorConfig& config) {
  config.Validate();
  if (grid_m < 1 || grid_n < 1) {
    throw std::invalid_argument("grid dimensions must be at least 1");
  }
  if (!(image_w > 0.0) || !(image_h > 0.0)) {
    throw std::invalid_argument("image dimensions must be positive");
  }

  std::vector<PriorShape> shapes;
  shapes.reserve(config.k());
  for (double s : config.scales) {
    for (double a : config.aspect_ratios) shapes.push_back(ShapeFor(s, a));
  }

  PriorLattice lattice;
  lattice.grid_m = grid_m;
  lattice.grid_n = grid_n;
  lattice.k = shapes.size();
  const std::size_t total =
      static_cast<std::size_t>(grid_m) * grid_n * lattice.k;
  lattice.boxes.reserve(total);
  lattice.excluded.assign(total, 0);

  for (int i = 0; i < grid_m; ++i) {
    const double cy = (i + 0.5) * config.stride;
    for (int j = 0; j < grid_n; ++j) {
      const double cx = (j + 0.5) * config.stride;
      for (const PriorShape& shape : shapes) {
        const BBox box{cx - shape.width / 2.0, cy - shape.height / 2.0,
                       cx + shape.width / 2.0, cy + shape.height / 2.0};
        if (config.drop_cross_boundary &&
            (box.x1 < 0.0 || box.y1 < 0.0 || box.x2 > image_w ||
             box.y2 > image_h)) {
          lattice.excluded[lattice.boxes.size()] = 1;
        }
        lattice.boxes.push_back(box);
      }
    }
  }
  return lattice;
}

GridSize GridForImage(double image_w, double image_h, double stride) {
  if (!(image_w > 0.0) || !(image_h > 0.0) || !(stride > 0.0)) {
    throw std::invalid_argument("image size and stride must be positive");
  }
  return GridSize{static_cast<int>(std::ceil(image_h / stride)),
                  static_cast<int>(std::ceil(image_w / stride))};
}

}  // namespace wordbox
