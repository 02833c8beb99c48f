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

#include "wordbox/losses.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wordbox {
namespace {

void CheckLogits(std::span<const double> logits, int label) {
  if (logits.empty()) throw std::invalid_argument("logits are empty");
  if (label < 0 || static_cast<std::size_t>(label) >= logits.size()) {
    throw std::invalid_argument("label out of range");
  }
  for (double z : logits) {
    if (!std::isfinite(z)) throw std::invalid_argument("non-finite logit");
  }
}

std::array<double, 4> Differences(const RegressionOffsets& pred,
                                  const RegressionOffsets& target) {
  return {pred.tx - target.tx, pred.ty - target.ty, pred.tw - target.tw,
          pred.th - target.th};
}

}  // namespace

double SoftmaxCrossEntropy(std::span<const double> logits, int label) {
  CheckLogits(logits, label);
  const double peak = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - peak);
  return std::log(sum) - (logits[label] - peak);
}

std::vector<double> SoftmaxCrossEntropyGradient(std::span<const double> logits,
                                                int label) {
  CheckLogits(logits, label);
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> grad(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    grad[i] = std::exp(logits[i] - peak);
    sum += grad[i];
  }
  for (double& g : grad) g /= sum;
  grad[label] -= 1.0;
  return grad;
}

double SmoothL1(double d) {
  const double a = std::abs(d);
  return a < 1.0 ? 0.5 * d * d : a - 0.5;
}

double SmoothL1Derivative(double d) {
  if (std::abs(d) < 1.0) return d;
  return d > 0.0 ? 1.0 : -1.0;
}

double SmoothL1Loss(const RegressionOffsets& pred,
                    const RegressionOffsets& target) {
  double sum = 0.0;
  for (double d : Differences(pred, target)) sum += SmoothL1(d);
  return sum;
}

std::array<double, 4> SmoothL1LossGradient(const RegressionOffsets& pred,
                                           const RegressionOffsets& target) {
  std::array<double, 4> grad = Differences(pred, target);
  for (double& g : grad) g = SmoothL1Derivative(g);
  return grad;
}

LossBreakdown MultitaskLoss(std::span<const ClassSample> cls,
                            std::span<const RegressionSample> reg,
                            double lambda) {
  if (cls.empty()) {
    throw std::invalid_argument("classification samples are empty");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");

  LossBreakdown out;
  out.lambda = lambda;
  for (const ClassSample& s : cls) {
    out.l_cls += SoftmaxCrossEntropy(s.logits, s.label);
  }
  out.l_cls /= static_cast<double>(cls.size());
  if (!reg.empty()) {
    for (const RegressionSample& s : reg) {
      out.l_reg += SmoothL1Loss(s.pred, s.target);
    }
    out.l_reg /= static_cast<double>(reg.size());
  }
  out.total = out.l_cls + out.lambda * out.l_reg;
  return out;
}

GradientCheck FiniteDifferenceCheck(const ScalarFunction& f,
                                    const GradientFunction& gradient,
                                    std::span<const double> x, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");

  GradientCheck out;
  out.analytic = gradient(x);
  if (out.analytic.size() != x.size()) {
    throw std::invalid_argument("gradient size does not match parameters");
  }
  out.numeric.resize(x.size());

  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + eps;
    const double up = f(probe);
    probe[i] = x[i] - eps;
    const double down = f(probe);
    probe[i] = x[i];
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw std::domain_error("function is not finite near the probe point");
    }
    out.numeric[i] = (up - down) / (2.0 * eps);

    const double a = out.analytic[i];
    const double n = out.numeric[i];
    const double rel =
        std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-8});
    if (i == 0 || rel > out.max_relative_error) {
      out.max_relative_error = rel;
      out.worst_coordinate = i;
    }
  }
  return out;
}

}  // namespace wordbox
