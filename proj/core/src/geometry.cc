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

#include "wordbox/geometry.h"

#include <cmath>
#include <stdexcept>

namespace wordbox {

bool BBox::valid() const {
  return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) &&
         std::isfinite(y2) && x1 <= x2 && y1 <= y2;
}

BBox NormalizeCorners(double x1, double y1, double x2, double y2) {
  return BBox{std::min(x1, x2), std::min(y1, y2), std::max(x1, x2),
              std::max(y1, y2)};
}

double IntersectionArea(const BBox& a, const BBox& b) {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  return iw * ih;
}

double Iou(const BBox& a, const BBox& b) {
  const double inter = IntersectionArea(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

bool Contains(const BBox& outer, const BBox& inner, double eps) {
  return outer.x1 <= inner.x1 + eps && outer.y1 <= inner.y1 + eps &&
         outer.x2 >= inner.x2 - eps && outer.y2 >= inner.y2 - eps;
}

CenterBox ToCenter(const BBox& box) {
  return CenterBox{(box.x1 + box.x2) / 2.0, (box.y1 + box.y2) / 2.0,
                   box.width(), box.height()};
}

BBox ToCorner(const CenterBox& box) {
  if (!(box.w > 0.0) || !(box.h > 0.0)) {
    throw std::invalid_argument("center box extents must be positive");
  }
  return BBox{box.cx - box.w / 2.0, box.cy - box.h / 2.0, box.cx + box.w / 2.0,
              box.cy + box.h / 2.0};
}

BBox ClipToImage(const BBox& box, double width, double height) {
  return BBox{std::clamp(box.x1, 0.0, width), std::clamp(box.y1, 0.0, height),
              std::clamp(box.x2, 0.0, width), std::clamp(box.y2, 0.0, height)};
}

}  // namespace wordbox
