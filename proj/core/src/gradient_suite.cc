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

#include "wordbox/gradient_suite.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "wordbox/mlrp.h"

namespace wordbox {
namespace {

double Normal(std::mt19937_64& rng, double sigma = 1.0) {
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// A difference of random magnitude in (-3, 3) away from the |d| = 1 kinks.
double DifferenceAwayFromKink(std::mt19937_64& rng, double eps) {
  for (;;) {
    const double d = Uniform(rng, -3.0, 3.0);
    if (std::abs(std::abs(d) - 1.0) > kKinkMargin + eps) return d;
  }
}

RegressionOffsets FromSpan(std::span<const double> v) {
  return RegressionOffsets{v[0], v[1], v[2], v[3]};
}

double CheckSoftmax(std::mt19937_64& rng, const GradientSuiteOptions& opt) {
  constexpr int kClasses = 5;
  std::vector<double> logits(kClasses);
  for (double& z : logits) z = Normal(rng, 2.0);
  const int label = std::uniform_int_distribution<int>(0, kClasses - 1)(rng);
  return FiniteDifferenceCheck(
             [&](std::span<const double> x) {
               return SoftmaxCrossEntropy(x, label);
             },
             [&](std::span<const double> x) {
               return SoftmaxCrossEntropyGradient(x, label);
             },
             logits, opt.eps)
      .max_relative_error;
}

double CheckSmoothL1(std::mt19937_64& rng, const GradientSuiteOptions& opt) {
  RegressionOffsets target{Normal(rng), Normal(rng), Normal(rng), Normal(rng)};
  std::vector<double> pred = {
      target.tx + DifferenceAwayFromKink(rng, opt.eps),
      target.ty + DifferenceAwayFromKink(rng, opt.eps),
      target.tw + DifferenceAwayFromKink(rng, opt.eps),
      target.th + DifferenceAwayFromKink(rng, opt.eps)};
  return FiniteDifferenceCheck(
             [&](std::span<const double> x) {
               return SmoothL1Loss(FromSpan(x), target);
             },
             [&](std::span<const double> x) {
               const auto g = SmoothL1LossGradient(FromSpan(x), target);
               return std::vector<double>(g.begin(), g.end());
             },
             pred, opt.eps)
      .max_relative_error;
}

// Parameters: logits of every classification sample followed by the four
// predicted offsets of every regression sample.
double CheckMultitask(std::mt19937_64& rng, const GradientSuiteOptions& opt) {
  constexpr int kClasses = 3;
  constexpr int kClsSamples = 4;
  constexpr int kRegSamples = 2;

  std::vector<int> labels(kClsSamples);
  for (int& l : labels) l = std::uniform_int_distribution<int>(0, 2)(rng);
  std::vector<RegressionOffsets> targets(kRegSamples);
  for (auto& t : targets) {
    t = {Normal(rng), Normal(rng), Normal(rng), Normal(rng)};
  }

  std::vector<double> params;
  for (int s = 0; s < kClsSamples * kClasses; ++s) {
    params.push_back(Normal(rng, 2.0));
  }
  for (const auto& t : targets) {
    params.push_back(t.tx + DifferenceAwayFromKink(rng, opt.eps));
    params.push_back(t.ty + DifferenceAwayFromKink(rng, opt.eps));
    params.push_back(t.tw + DifferenceAwayFromKink(rng, opt.eps));
    params.push_back(t.th + DifferenceAwayFromKink(rng, opt.eps));
  }

  auto unpack = [&](std::span<const double> x) {
    std::pair<std::vector<ClassSample>, std::vector<RegressionSample>> out;
    for (int s = 0; s < kClsSamples; ++s) {
      auto first = x.begin() + s * kClasses;
      out.first.push_back({std::vector<double>(first, first + kClasses),
                           labels[s]});
    }
    for (int r = 0; r < kRegSamples; ++r) {
      out.second.push_back(
          {FromSpan(x.subspan(kClsSamples * kClasses + r * 4, 4)),
           targets[r]});
    }
    return out;
  };

  return FiniteDifferenceCheck(
             [&](std::span<const double> x) {
               const auto [cls, reg] = unpack(x);
               return MultitaskLoss(cls, reg, opt.lambda).total;
             },
             [&](std::span<const double> x) {
               const auto [cls, reg] = unpack(x);
               std::vector<double> grad;
               for (const ClassSample& s : cls) {
                 for (double g : SoftmaxCrossEntropyGradient(s.logits, s.label)) {
                   grad.push_back(g / kClsSamples);
                 }
               }
               for (const RegressionSample& s : reg) {
                 for (double g : SmoothL1LossGradient(s.pred, s.target)) {
                   grad.push_back(opt.lambda * g / kRegSamples);
                 }
               }
               return grad;
             },
             params, opt.eps)
      .max_relative_error;
}

FeatureGrid RandomGrid(std::mt19937_64& rng, int channels, int size,
                       double stride) {
  FeatureGrid grid{Tensor3(channels, size, size), stride};
  for (double& v : grid.data.values()) v = Normal(rng);
  return grid;
}

// Parameters: the fusion matrix followed by the bias.
double CheckFusion(std::mt19937_64& rng, const GradientSuiteOptions& opt) {
  constexpr int kOut = 3;
  constexpr int kPooled = 2;
  const std::vector<FeatureGrid> grids = {
      RandomGrid(rng, 2, 8, kFineStride), RandomGrid(rng, 2, 4, kCoarseStride)};
  const double x1 = Uniform(rng, 0.0, 30.0);
  const double y1 = Uniform(rng, 0.0, 30.0);
  const BBox roi{x1, y1, x1 + Uniform(rng, 8.0, 32.0),
                 y1 + Uniform(rng, 8.0, 32.0)};
  const int in_c = grids[0].data.channels() + grids[1].data.channels();

  PooledFeature upstream(kOut, kPooled, kPooled);
  for (double& v : upstream.values()) v = Normal(rng);

  std::vector<double> params(kOut * in_c + kOut);
  for (double& v : params) v = Normal(rng);

  auto weights_of = [&](std::span<const double> x) {
    FusionWeights w;
    w.out_channels = kOut;
    w.in_channels = in_c;
    w.matrix.assign(x.begin(), x.begin() + kOut * in_c);
    w.bias = std::vector<double>(x.begin() + kOut * in_c, x.end());
    return w;
  };
  const PooledFeature pooled[] = {
      RoiMaxPool(grids[0], roi, kPooled, kPooled),
      RoiMaxPool(grids[1], roi, kPooled, kPooled)};
  const PooledFeature concat = ConcatChannels(pooled);

  return FiniteDifferenceCheck(
             [&](std::span<const double> x) {
               const PooledFeature out = FuseMultiLevel(
                   grids, roi, kPooled, kPooled, weights_of(x));
               double sum = 0.0;
               for (std::size_t i = 0; i < out.values().size(); ++i) {
                 sum += out.values()[i] * upstream.values()[i];
               }
               return sum;
             },
             [&](std::span<const double>) {
               FusionGradient g = FusionWeightGradient(concat, upstream);
               g.matrix.insert(g.matrix.end(), g.bias.begin(), g.bias.end());
               return g.matrix;
             },
             params, opt.eps)
      .max_relative_error;
}

}  // namespace

std::vector<GradientCheckEntry> RunGradientSuite(
    const GradientSuiteOptions& options) {
  using Check = double (*)(std::mt19937_64&, const GradientSuiteOptions&);
  const std::pair<const char*, Check> checks[] = {
      {"softmax_xent", &CheckSoftmax},
      {"smooth_l1", &CheckSmoothL1},
      {"multitask_loss", &CheckMultitask},
      {"mlrp_fusion", &CheckFusion},
  };

  std::vector<GradientCheckEntry> report;
  std::uint64_t stream = 0;
  for (const auto& [name, check] : checks) {
    std::mt19937_64 rng(options.seed + 0x9e3779b97f4a7c15ULL * ++stream);
    GradientCheckEntry entry{name, options.points, 0.0};
    for (int p = 0; p < options.points; ++p) {
      entry.max_relative_error =
          std::max(entry.max_relative_error, check(rng, options));
    }
    report.push_back(entry);
  }
  return report;
}

}  // namespace wordbox
