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

#include "wordbox/formats.h"

#include <array>
#include <charconv>
#include <cmath>

namespace wordbox {
namespace {

bool IsSeparator(char c) {
  return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\v' ||
         c == '\f';
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSeparator(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSeparator(s.back())) s.remove_suffix(1);
  return s;
}

// Splits text into lines on '\n'; a trailing '\r' stays with the line and
// is treated as a separator.
std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

bool SkippedLine(std::string_view line) {
  const std::string_view t = Trim(line);
  return t.empty() || t.front() == '#';
}

// Cursor over the separator-delimited fields of one line.
class FieldReader {
 public:
  explicit FieldReader(std::string_view line) : line_(line) {}

  void SkipSeparators() {
    while (pos_ < line_.size() && IsSeparator(line_[pos_])) ++pos_;
  }

  bool AtEnd() {
    SkipSeparators();
    return pos_ >= line_.size();
  }

  char Peek() {
    SkipSeparators();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }

  std::string_view Next() {
    SkipSeparators();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && !IsSeparator(line_[pos_])) ++pos_;
    return line_.substr(start, pos_ - start);
  }

  std::string_view Rest() {
    SkipSeparators();
    std::string_view rest = line_.substr(pos_);
    while (!rest.empty() && IsSeparator(rest.back()) && rest.back() != ',') {
      rest.remove_suffix(1);
    }
    pos_ = line_.size();
    return rest;
  }

 private:
  std::string_view line_;
  std::size_t pos_ = 0;
};

[[noreturn]] void Fail(std::size_t line, std::string message,
                       std::string_view content) {
  throw ParseError(line, std::move(message), std::string(content));
}

double ReadCoordinate(FieldReader& reader, std::size_t line_no,
                      std::string_view line) {
  const std::string_view token = reader.Next();
  const std::optional<double> v = ParseNumber(token);
  if (!v) {
    Fail(line_no, "non-numeric coordinate '" + std::string(token) + "'", line);
  }
  return *v;
}

// Whitespace token stream over a whole document, tracking line numbers.
class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : text_(text) {}

  std::optional<std::string_view> Next() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == '#' && AtLineStart()) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (IsSeparator(c)) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '\n' &&
           !IsSeparator(text_[pos_])) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  std::size_t line() const { return line_; }

  std::string_view CurrentLine() const {
    std::size_t begin = text_.rfind('\n', pos_ == 0 ? 0 : pos_ - 1);
    begin = begin == std::string_view::npos ? 0 : begin + 1;
    std::size_t end = text_.find('\n', begin);
    if (end == std::string_view::npos) end = text_.size();
    return text_.substr(begin, end - begin);
  }

  double Number(std::string_view what) {
    const auto token = Next();
    if (!token) Fail(line_, "unexpected end of input, expected " +
                                std::string(what), "");
    const auto v = ParseNumber(*token);
    if (!v) {
      Fail(line_, "expected " + std::string(what) + ", got '" +
                      std::string(*token) + "'",
           CurrentLine());
    }
    return *v;
  }

  int Integer(std::string_view what) {
    const double v = Number(what);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      Fail(line_, "expected integer " + std::string(what), CurrentLine());
    }
    return static_cast<int>(v);
  }

  void ExpectEnd() {
    if (const auto extra = Next()) {
      Fail(line_, "unexpected trailing value '" + std::string(*extra) + "'",
           CurrentLine());
    }
  }

 private:
  bool AtLineStart() const {
    for (std::size_t i = pos_; i > 0; --i) {
      const char c = text_[i - 1];
      if (c == '\n') return true;
      if (!IsSeparator(c)) return false;
    }
    return true;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::vector<double> ReadValues(TokenStream& in, std::size_t count) {
  std::vector<double> values(count);
  for (double& v : values) v = in.Number("tensor value");
  return values;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::string message,
                       std::string content)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line),
      message_(std::move(message)),
      content_(std::move(content)) {}

std::string FormatFixed(double value, int decimals) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, decimals);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf.data(), end);
}

std::string FormatShortest(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf.data(), end);
}

std::optional<double> ParseNumber(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

GroundTruthMap ParseGroundTruth(std::string_view text,
                                std::string_view default_image_id) {
  GroundTruthMap out;
  const std::vector<std::string_view> lines = SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = lines[n];
    const std::size_t line_no = n + 1;
    if (SkippedLine(line)) continue;

    FieldReader reader(line);
    std::string image_id(default_image_id);
    {
      FieldReader probe = reader;
      const std::string_view first = probe.Next();
      if (first.front() != '"' && !ParseNumber(first)) {
        image_id = std::string(first);
        reader = probe;
      }
    }

    std::array<double, 4> coords{};
    for (double& c : coords) {
      if (reader.AtEnd() || reader.Peek() == '"') {
        Fail(line_no, "expected ≥4 coordinates", line);
      }
      c = ReadCoordinate(reader, line_no, line);
    }

    GroundTruthEntry entry;
    entry.box = NormalizeCorners(coords[0], coords[1], coords[2], coords[3]);
    std::string_view rest = reader.Rest();
    if (!rest.empty()) {
      if (rest.front() == '"') {
        rest.remove_prefix(1);
        if (!rest.empty() && rest.back() == '"') rest.remove_suffix(1);
      }
      entry.text = std::string(rest);
    }
    out[image_id].push_back(std::move(entry));
  }
  return out;
}

std::string SerializeGroundTruth(const GroundTruthMap& gts) {
  std::string out;
  for (const auto& [image_id, entries] : gts) {
    for (const GroundTruthEntry& e : entries) {
      if (!image_id.empty()) out += image_id + ", ";
      out += FormatFixed(e.box.x1) + ", " + FormatFixed(e.box.y1) + ", " +
             FormatFixed(e.box.x2) + ", " + FormatFixed(e.box.y2);
      if (e.text) out += ", \"" + *e.text + "\"";
      out += '\n';
    }
  }
  return out;
}

std::vector<BBox> BoxesOf(const std::vector<GroundTruthEntry>& entries) {
  std::vector<BBox> boxes;
  boxes.reserve(entries.size());
  for (const GroundTruthEntry& e : entries) boxes.push_back(e.box);
  return boxes;
}

std::string SerializeScene(const SynthScene& scene,
                           std::string_view image_id) {
  GroundTruthMap map;
  auto& entries = map[std::string(image_id)];
  for (const BBox& box : scene.gts) entries.push_back({box, std::nullopt});
  return SerializeGroundTruth(map);
}

DetectionsByImage ParseDetections(std::string_view text) {
  DetectionsByImage out;
  const std::vector<std::string_view> lines = SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = lines[n];
    const std::size_t line_no = n + 1;
    if (SkippedLine(line)) continue;

    FieldReader reader(line);
    std::vector<std::string_view> fields;
    while (!reader.AtEnd()) fields.push_back(reader.Next());
    if (fields.size() != 6 && fields.size() != 7) {
      Fail(line_no,
           "expected 6 or 7 fields (id x1 y1 x2 y2 score [class]), got " +
               std::to_string(fields.size()),
           line);
    }

    std::array<double, 4> coords{};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto v = ParseNumber(fields[i + 1]);
      if (!v) {
        Fail(line_no,
             "non-numeric coordinate '" + std::string(fields[i + 1]) + "'",
             line);
      }
      coords[i] = *v;
    }
    const auto score = ParseNumber(fields[5]);
    if (!score) {
      Fail(line_no, "non-numeric score '" + std::string(fields[5]) + "'",
           line);
    }
    if (*score < 0.0 || *score > 1.0) Fail(line_no, "score out of range", line);

    int class_id = kTextClass;
    if (fields.size() == 7) {
      const auto cls = ParseNumber(fields[6]);
      if (!cls || (*cls != 0.0 && *cls != 1.0 && *cls != 2.0)) {
        Fail(line_no,
             "class id must be 0, 1 or 2, got '" + std::string(fields[6]) + "'",
             line);
      }
      class_id = static_cast<int>(*cls);
    }

    out[std::string(fields[0])].items.push_back(
        ScoredBox{NormalizeCorners(coords[0], coords[1], coords[2], coords[3]),
                  *score, class_id});
  }
  return out;
}

std::string SerializeDetections(const DetectionsByImage& detections) {
  std::string out;
  for (const auto& [image_id, set] : detections) {
    for (const ScoredBox& d : set.items) {
      out += image_id + ' ' + FormatFixed(d.box.x1) + ' ' +
             FormatFixed(d.box.y1) + ' ' + FormatFixed(d.box.x2) + ' ' +
             FormatFixed(d.box.y2) + ' ' + FormatFixed(d.score) + ' ' +
             std::to_string(d.class_id) + '\n';
    }
  }
  return out;
}

std::string SerializeRecallCurve(const RecallCurve& curve) {
  std::string out;
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    out += FormatFixed(curve.thresholds[i]) + '\t' +
           FormatFixed(curve.recall[i]) + '\n';
  }
  return out;
}

std::string SerializePrf(const Prf& prf) {
  return "P=" + FormatFixed(prf.precision) + " R=" + FormatFixed(prf.recall) +
         " F=" + FormatFixed(prf.f_measure) + " TP=" + std::to_string(prf.tp) +
         " FP=" + std::to_string(prf.fp) + " FN=" + std::to_string(prf.fn);
}

FeatureGrid ParseFeatureGrid(std::string_view text) {
  TokenStream in(text);
  const int channels = in.Integer("channel count");
  const int height = in.Integer("height");
  const int width = in.Integer("width");
  const double stride = in.Number("stride");
  if (channels < 1 || height < 1 || width < 1 || !(stride > 0.0)) {
    Fail(1, "grid header needs positive C, height, width and stride",
         in.CurrentLine());
  }
  std::vector<double> values = ReadValues(
      in, static_cast<std::size_t>(channels) * height * width);
  in.ExpectEnd();
  FeatureGrid grid{Tensor3(channels, height, width, std::move(values)),
                   stride};
  return grid;
}

std::string SerializeFeatureGrid(const FeatureGrid& grid) {
  const Tensor3& t = grid.data;
  std::string out = std::to_string(t.channels()) + ' ' +
                    std::to_string(t.height()) + ' ' +
                    std::to_string(t.width()) + ' ' +
                    FormatShortest(grid.stride) + '\n';
  for (int c = 0; c < t.channels(); ++c) {
    for (int y = 0; y < t.height(); ++y) {
      for (int x = 0; x < t.width(); ++x) {
        if (x > 0) out += ' ';
        out += FormatShortest(t.at(c, y, x));
      }
      out += '\n';
    }
  }
  return out;
}

FusionWeights ParseFusionWeights(std::string_view text) {
  TokenStream in(text);
  FusionWeights w;
  w.out_channels = in.Integer("C_out");
  w.in_channels = in.Integer("C_in");
  const int has_bias = in.Integer("has_bias flag");
  if (w.out_channels < 1 || w.in_channels < 1 ||
      (has_bias != 0 && has_bias != 1)) {
    Fail(1, "weights header needs positive C_out, C_in and has_bias 0 or 1",
         in.CurrentLine());
  }
  w.matrix =
      ReadValues(in, static_cast<std::size_t>(w.out_channels) * w.in_channels);
  if (has_bias == 1) {
    w.bias = ReadValues(in, static_cast<std::size_t>(w.out_channels));
  }
  in.ExpectEnd();
  return w;
}

std::string SerializeFusionWeights(const FusionWeights& weights) {
  std::string out = std::to_string(weights.out_channels) + ' ' +
                    std::to_string(weights.in_channels) + ' ' +
                    (weights.bias ? "1" : "0") + '\n';
  for (int o = 0; o < weights.out_channels; ++o) {
    for (int i = 0; i < weights.in_channels; ++i) {
      if (i > 0) out += ' ';
      out += FormatShortest(weights.weight(o, i));
    }
    out += '\n';
  }
  if (weights.bias) {
    for (std::size_t o = 0; o < weights.bias->size(); ++o) {
      if (o > 0) out += ' ';
      out += FormatShortest((*weights.bias)[o]);
    }
    out += '\n';
  }
  return out;
}

PooledFeature ParsePooledFeature(std::string_view text) {
  TokenStream in(text);
  const int channels = in.Integer("channel count");
  const int height = in.Integer("height");
  const int width = in.Integer("width");
  if (channels < 1 || height < 1 || width < 1) {
    Fail(1, "pooled header needs positive C, H and W", in.CurrentLine());
  }
  std::vector<double> values = ReadValues(
      in, static_cast<std::size_t>(channels) * height * width);
  in.ExpectEnd();
  return PooledFeature(channels, height, width, std::move(values));
}

std::string SerializePooledFeature(const PooledFeature& pooled) {
  std::string out = std::to_string(pooled.channels()) + ' ' +
                    std::to_string(pooled.height()) + ' ' +
                    std::to_string(pooled.width()) + '\n';
  for (int c = 0; c < pooled.channels(); ++c) {
    for (int y = 0; y < pooled.height(); ++y) {
      for (int x = 0; x < pooled.width(); ++x) {
        if (x > 0) out += ' ';
        out += FormatShortest(pooled.at(c, y, x));
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace wordbox
