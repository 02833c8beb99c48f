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

#include "wordbox/codec.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wordbox {
namespace {

void CheckExtents(const CenterBox& box, const char* what) {
  if (!(box.w > 0.0) || !(box.h > 0.0) || !std::isfinite(box.w) ||
      !std::isfinite(box.h)) {
    throw std::invalid_argument(std::string(what) +
                                " box must have positive width and height");
  }
}

}  // namespace

RegressionOffsets Encode(const CenterBox& reference, const CenterBox& target) {
  CheckExtents(reference, "reference");
  CheckExtents(target, "target");
  return RegressionOffsets{(target.cx - reference.cx) / reference.w,
                           (target.cy - reference.cy) / reference.h,
                           std::log(target.w / reference.w),
                           std::log(target.h / reference.h)};
}

CenterBox Decode(const RegressionOffsets& offsets, const CenterBox& reference) {
  CheckExtents(reference, "reference");
  if (!std::isfinite(offsets.tx) || !std::isfinite(offsets.ty) ||
      !std::isfinite(offsets.tw) || !std::isfinite(offsets.th)) {
    throw std::invalid_argument("regression offsets must be finite");
  }
  if (std::abs(offsets.tw) > kMaxLogScale ||
      std::abs(offsets.th) > kMaxLogScale) {
    throw std::invalid_argument("log-scale offset out of range");
  }
  return CenterBox{offsets.tx * reference.w + reference.cx,
                   offsets.ty * reference.h + reference.cy,
                   reference.w * std::exp(offsets.tw),
                   reference.h * std::exp(offsets.th)};
}

RegressionOffsets Encode(const BBox& reference, const BBox& target) {
  return Encode(ToCenter(reference), ToCenter(target));
}

BBox Decode(const RegressionOffsets& offsets, const BBox& reference) {
  return ToCorner(Decode(offsets, ToCenter(reference)));
}

}  // namespace wordbox
