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

#ifndef WORDBOX_CODEC_H_
#define WORDBOX_CODEC_H_

#include "wordbox/geometry.h"

namespace wordbox {

// Bounding-box regression offsets of a target relative to a reference box:
//   tx = (gx - px) / pw    ty = (gy - py) / ph
//   tw = ln(gw / pw)       th = ln(gh / ph)
struct RegressionOffsets {
  double tx = 0.0;
  double ty = 0.0;
  double tw = 0.0;
  double th = 0.0;

  friend bool operator==(const RegressionOffsets&,
                         const RegressionOffsets&) = default;
};

// Largest |tw| or |th| accepted by Decode.
inline constexpr double kMaxLogScale = 50.0;

// Throws std::invalid_argument when any extent is not positive.
RegressionOffsets Encode(const CenterBox& reference, const CenterBox& target);

// Inverse of Encode. No clipping is applied. Throws std::invalid_argument on
// non-finite offsets or |tw|, |th| > kMaxLogScale.
CenterBox Decode(const RegressionOffsets& offsets, const CenterBox& reference);

// Corner-form conveniences.
RegressionOffsets Encode(const BBox& reference, const BBox& target);
BBox Decode(const RegressionOffsets& offsets, const BBox& reference);

}  // namespace wordbox

#endif  // WORDBOX_CODEC_H_
