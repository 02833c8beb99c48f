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

#ifndef WORDBOX_GEOMETRY_H_
#define WORDBOX_GEOMETRY_H_

#include <algorithm>

namespace wordbox {

// Axis-aligned rectangle in continuous image-pixel coordinates (corner form).
// Boxes are closed; area is (x2 - x1) * (y2 - y1) with no +1 pixel term.
// Zero-area boxes are legal and overlap nothing.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }

  // x1 <= x2, y1 <= y2 and all coordinates finite.
  bool valid() const;

  friend bool operator==(const BBox&, const BBox&) = default;
};

// Center form used by the regression codec. Extents must be positive.
struct CenterBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const CenterBox&, const CenterBox&) = default;
};

// Class ids carried by scored boxes.
enum ClassId : int {
  kBackgroundClass = 0,
  kTextClass = 1,
  kAmbiguousClass = 2,
};

// A box with a textness score in [0, 1] and a class id.
struct ScoredBox {
  BBox box;
  double score = 0.0;
  int class_id = kTextClass;

  friend bool operator==(const ScoredBox&, const ScoredBox&) = default;
};

// Returns a valid box from possibly swapped corners.
BBox NormalizeCorners(double x1, double y1, double x2, double y2);

// Area of the intersection of two boxes (0 when disjoint).
double IntersectionArea(const BBox& a, const BBox& b);

// Intersection over union. Returns 0 when the union area is 0.
double Iou(const BBox& a, const BBox& b);

// True iff `outer` contains `inner` up to an absolute tolerance of `eps`
// pixels on every side.
bool Contains(const BBox& outer, const BBox& inner, double eps = 0.0);

CenterBox ToCenter(const BBox& box);

// Throws std::invalid_argument when w <= 0 or h <= 0.
BBox ToCorner(const CenterBox& box);

// Clamps a box into [0, width] x [0, height].
BBox ClipToImage(const BBox& box, double width, double height);

}  // namespace wordbox

#endif  // WORDBOX_GEOMETRY_H_
