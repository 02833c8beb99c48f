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

#ifndef WORDBOX_GRADIENT_SUITE_H_
#define WORDBOX_GRADIENT_SUITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "wordbox/losses.h"

namespace wordbox {

// Tolerance on the max relative error between analytic gradients and
// central differences.
inline constexpr double kGradientTolerance = 1e-4;

// Points closer than this to a smooth-L1 kink (|d| = 1) are resampled.
inline constexpr double kKinkMargin = 1e-3;

struct GradientCheckEntry {
  std::string name;
  int points = 0;
  double max_relative_error = 0.0;
};

struct GradientSuiteOptions {
  std::uint64_t seed = 0;
  int points = 100;
  double eps = 1e-5;
  double lambda = kRpnLambda;
};

// Checks the analytic gradients of softmax cross-entropy, smooth-L1, the
// multi-task loss and the multi-level fusion weights at `points` random
// parameter vectors each. Deterministic in `options.seed`.
std::vector<GradientCheckEntry> RunGradientSuite(
    const GradientSuiteOptions& options);

}  // namespace wordbox

#endif  // WORDBOX_GRADIENT_SUITE_H_
