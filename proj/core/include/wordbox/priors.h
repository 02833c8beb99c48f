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

#ifndef WORDBOX_PRIORS_H_
#define WORDBOX_PRIORS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wordbox/geometry.h"

namespace wordbox {

// Scales are square roots of box area in pixels; aspect ratios are
// height / width, so values below one describe wide boxes.
struct PriorConfig {
  std::vector<double> scales = {32.0, 48.0, 64.0, 80.0};
  std::vector<double> aspect_ratios = {0.2, 0.5, 0.8, 1.0, 1.2, 1.5};
  double stride = 16.0;
  bool drop_cross_boundary = false;

  // Number of priors per sliding position.
  std::size_t k() const { return scales.size() * aspect_ratios.size(); }

  // Throws std::invalid_argument on empty lists or non-positive values.
  void Validate() const;
};

// Width and height of one prior shape: w = s / sqrt(a), h = s * sqrt(a).
struct PriorShape {
  double width;
  double height;
};
PriorShape ShapeFor(double scale, double aspect_ratio);

// All priors of a feature grid, row-major over (row, col, prior), priors
// ordered scale-major then ratio.
struct PriorLattice {
  int grid_m = 0;
  int grid_n = 0;
  std::size_t k = 0;
  std::vector<BBox> boxes;
  // 1 for priors that cross the image boundary when the config asks to drop
  // them from training; always 0 otherwise. Boxes stay in `boxes` either way.
  std::vector<std::uint8_t> excluded;

  std::size_t size() const { return boxes.size(); }
  std::size_t Index(int row, int col, std::size_t prior) const {
    return (static_cast<std::size_t>(row) * grid_n + col) * k + prior;
  }
};

PriorLattice GeneratePriors(int grid_m, int grid_n, double image_w,
                            double image_h, const PriorConfig& config = {});

// Grid dimensions covering an image at the config stride (ceil division).
struct GridSize {
  int rows;
  int cols;
};
GridSize GridForImage(double image_w, double image_h, double stride);

}  // namespace wordbox

#endif  // WORDBOX_PRIORS_H_
