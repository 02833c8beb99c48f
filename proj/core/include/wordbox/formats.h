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

#ifndef WORDBOX_FORMATS_H_
#define WORDBOX_FORMATS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wordbox/evaluation.h"
#include "wordbox/geometry.h"
#include "wordbox/mlrp.h"
#include "wordbox/suppression.h"
#include "wordbox/synth.h"

namespace wordbox {

// Malformed input. what() reads "line <n>: <message>".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string message, std::string content);

  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }
  const std::string& content() const { return content_; }

 private:
  std::size_t line_;
  std::string message_;
  std::string content_;
};

// Ground truth
//
// One word per line, comma- or whitespace-separated:
//   [image_id] x1 y1 x2 y2 [transcription]
// A leading token that is not a number is an image id; without one the line
// belongs to `default_image_id`. Quoted transcriptions lose their quotes,
// unquoted ones are kept verbatim. Blank lines and lines starting with '#'
// are skipped. Swapped corners are normalized.

struct GroundTruthEntry {
  BBox box;
  std::optional<std::string> text;

  friend bool operator==(const GroundTruthEntry&,
                         const GroundTruthEntry&) = default;
};

using GroundTruthMap = std::map<std::string, std::vector<GroundTruthEntry>>;

GroundTruthMap ParseGroundTruth(std::string_view text,
                                std::string_view default_image_id = "");

// Canonical form: "[id, ]x1, y1, x2, y2[, "text"]" with six decimals.
std::string SerializeGroundTruth(const GroundTruthMap& gts);

std::vector<BBox> BoxesOf(const std::vector<GroundTruthEntry>& entries);

// Scene ground truth under `image_id`.
std::string SerializeScene(const SynthScene& scene, std::string_view image_id);

// Detections
//
// One detection per line: image_id x1 y1 x2 y2 score [class_id]. Scores must
// lie in [0, 1]; class ids are 0, 1 or 2 and default to 1.

using DetectionsByImage = std::map<std::string, DetectionSet>;

DetectionsByImage ParseDetections(std::string_view text);

// Canonical form: "id x1 y1 x2 y2 score class" with six decimals, images in
// key order, detections in stored order. Empty input yields "".
std::string SerializeDetections(const DetectionsByImage& detections);

// Evaluation outputs

// "threshold<TAB>recall" per line.
std::string SerializeRecallCurve(const RecallCurve& curve);

// "P=<v> R=<v> F=<v> TP=<n> FP=<n> FN=<n>".
std::string SerializePrf(const Prf& prf);

// Tensors
//
// Feature grid: header "C height width stride", then C*height*width values
// row-major. Fusion weights: header "C_out C_in has_bias", then the matrix
// row-major, then C_out bias values when has_bias is 1. Pooled features use a
// three-field header "C H W". Values are written in shortest round-trip form.

FeatureGrid ParseFeatureGrid(std::string_view text);
std::string SerializeFeatureGrid(const FeatureGrid& grid);

FusionWeights ParseFusionWeights(std::string_view text);
std::string SerializeFusionWeights(const FusionWeights& weights);

PooledFeature ParsePooledFeature(std::string_view text);
std::string SerializePooledFeature(const PooledFeature& pooled);

// Number formatting shared by every text format; independent of locale.
std::string FormatFixed(double value, int decimals = 6);
std::string FormatShortest(double value);
std::optional<double> ParseNumber(std::string_view token);

}  // namespace wordbox

#endif  // WORDBOX_FORMATS_H_
