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

#ifndef WORDBOX_LOSSES_H_
#define WORDBOX_LOSSES_H_

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "wordbox/codec.h"

namespace wordbox {

// Loss-balancing weights of the regression term.
inline constexpr double kRpnLambda = 3.0;
inline constexpr double kDetectionLambda = 1.0;

// Softmax cross-entropy -log(softmax(logits)[label]), max-shifted.
// Throws std::invalid_argument for an out-of-range label, empty or
// non-finite logits.
double SoftmaxCrossEntropy(std::span<const double> logits, int label);

// d/d logits: softmax(logits) - onehot(label).
std::vector<double> SoftmaxCrossEntropyGradient(std::span<const double> logits,
                                                int label);

// 0.5 d^2 for |d| < 1, |d| - 0.5 otherwise.
double SmoothL1(double d);
double SmoothL1Derivative(double d);

// Sum of SmoothL1 over the four offset differences.
double SmoothL1Loss(const RegressionOffsets& pred,
                    const RegressionOffsets& target);

// Gradient of SmoothL1Loss with respect to `pred`, ordered (x, y, w, h).
std::array<double, 4> SmoothL1LossGradient(const RegressionOffsets& pred,
                                           const RegressionOffsets& target);

struct ClassSample {
  std::vector<double> logits;
  int label = 0;
};

// Only positive samples carry a regression pair.
struct RegressionSample {
  RegressionOffsets pred;
  RegressionOffsets target;
};

struct LossBreakdown {
  double l_cls = 0.0;
  double l_reg = 0.0;
  double lambda = 1.0;
  double total = 0.0;
};

// total = l_cls + lambda * l_reg, with l_cls the mean cross-entropy over
// `cls` and l_reg the mean smooth-L1 over `reg` (0 when `reg` is empty).
// Throws std::invalid_argument for empty `cls` or lambda <= 0.
LossBreakdown MultitaskLoss(std::span<const ClassSample> cls,
                            std::span<const RegressionSample> reg,
                            double lambda);

using ScalarFunction = std::function<double(std::span<const double>)>;
using GradientFunction =
    std::function<std::vector<double>(std::span<const double>)>;

struct GradientCheck {
  double max_relative_error = 0.0;
  std::size_t worst_coordinate = 0;
  std::vector<double> analytic;
  std::vector<double> numeric;
};

// Compares `gradient(x)` against central differences
// (f(x + eps e_i) - f(x - eps e_i)) / 2 eps. Relative error per coordinate
// uses max(|analytic|, |numeric|, 1e-8) as denominator. Throws
// std::invalid_argument for eps <= 0 and std::domain_error when f returns a
// non-finite value.
GradientCheck FiniteDifferenceCheck(const ScalarFunction& f,
                                    const GradientFunction& gradient,
                                    std::span<const double> x,
                                    double eps = 1e-5);

}  // namespace wordbox

#endif  // WORDBOX_LOSSES_H_
