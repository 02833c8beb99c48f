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

#ifndef WORDBOX_CONFIG_H_
#define WORDBOX_CONFIG_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wordbox/evaluation.h"
#include "wordbox/labeling.h"
#include "wordbox/mlrp.h"
#include "wordbox/priors.h"
#include "wordbox/suppression.h"
#include "wordbox/synth.h"

namespace wordbox {

struct SuppressionConfig {
  double nms_iou = kProposalNmsIou;
  std::size_t top_k = kProposalTopK;
  double vote_iou = kVoteNmsIou;
  double nested_eps = 0.0;
};

struct MlrpConfig {
  int pooled_h = kPooledSize;
  int pooled_w = kPooledSize;
  std::vector<double> strides = {kFineStride, kCoarseStride};
  bool bias = false;
};

struct EvalConfig {
  double match_iou = kMatchIou;
  std::size_t top_n = kEvalTopN;
  std::vector<double> thresholds = DefaultRecallThresholds();
};

// The shared configuration document. Every section is optional; missing
// fields keep their defaults.
struct Config {
  PriorConfig priors;
  SamplerConfig sampler;
  SuppressionConfig suppression;
  MlrpConfig mlrp;
  EvalConfig eval;
  SceneSpec synth;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses the JSON document with top-level keys priors, sampler, suppression,
// mlrp, eval and synth. Unknown keys, wrong types and out-of-range values
// throw ConfigError naming the offending path.
Config ParseConfig(std::string_view json_text);

// Full document with every field present.
std::string SerializeConfig(const Config& config);

}  // namespace wordbox

#endif  // WORDBOX_CONFIG_H_
