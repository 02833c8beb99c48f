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

#include "wordbox/config.h"

#include <functional>
#include <map>
#include <tuple>

#include "json.hpp"

namespace wordbox {
namespace {

using nlohmann::json;

[[noreturn]] void Bad(const std::string& path, const std::string& why) {
  throw ConfigError("config " + path + ": " + why);
}

// Dispatches each key of a section object to its field reader; unknown keys
// are errors.
void ReadSection(const json& doc, const std::string& path,
                 const std::map<std::string,
                                std::function<void(const json&,
                                                   const std::string&)>>&
                     fields) {
  if (!doc.is_object()) Bad(path, "expected an object");
  for (const auto& [key, value] : doc.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) Bad(path + "." + key, "unknown key");
    it->second(value, path + "." + key);
  }
}

double Number(const json& v, const std::string& path) {
  if (!v.is_number()) Bad(path, "expected a number");
  return v.get<double>();
}

double Positive(const json& v, const std::string& path) {
  const double x = Number(v, path);
  if (!(x > 0.0)) Bad(path, "must be positive");
  return x;
}

double Unit(const json& v, const std::string& path) {
  const double x = Number(v, path);
  if (!(x > 0.0) || x > 1.0) Bad(path, "must lie in (0, 1]");
  return x;
}

long long Integer(const json& v, const std::string& path, long long lo) {
  if (!v.is_number_integer()) Bad(path, "expected an integer");
  const long long x = v.get<long long>();
  if (x < lo) Bad(path, "must be at least " + std::to_string(lo));
  return x;
}

std::uint64_t Seed(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    Bad(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool Boolean(const json& v, const std::string& path) {
  if (!v.is_boolean()) Bad(path, "expected true or false");
  return v.get<bool>();
}

std::vector<double> PositiveList(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) Bad(path, "expected a non-empty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(Positive(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::pair<double, double> Range(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) Bad(path, "expected [low, high]");
  const double lo = Number(v[0], path + "[0]");
  const double hi = Number(v[1], path + "[1]");
  if (hi < lo) Bad(path, "low exceeds high");
  return {lo, hi};
}

}  // namespace

Config ParseConfig(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  Config c;
  ReadSection(doc, "$", {
      {"priors", [&](const json& v, const std::string& p) {
         ReadSection(v, p, {
             {"scales", [&](const json& x, const std::string& q) {
                c.priors.scales = PositiveList(x, q); }},
             {"aspect_ratios", [&](const json& x, const std::string& q) {
                c.priors.aspect_ratios = PositiveList(x, q); }},
             {"stride", [&](const json& x, const std::string& q) {
                c.priors.stride = Positive(x, q); }},
             {"drop_cross_boundary", [&](const json& x, const std::string& q) {
                c.priors.drop_cross_boundary = Boolean(x, q); }},
         });
       }},
      {"sampler", [&](const json& v, const std::string& p) {
         ReadSection(v, p, {
             {"n_b", [&](const json& x, const std::string& q) {
                c.sampler.n_b = static_cast<int>(Integer(x, q, 0)); }},
             {"n_p", [&](const json& x, const std::string& q) {
                c.sampler.n_p = static_cast<int>(Integer(x, q, 0)); }},
             {"n_a", [&](const json& x, const std::string& q) {
                c.sampler.n_a = static_cast<int>(Integer(x, q, 0)); }},
             {"n_n", [&](const json& x, const std::string& q) {
                c.sampler.n_n = static_cast<int>(Integer(x, q, 0)); }},
             {"seed", [&](const json& x, const std::string& q) {
                c.sampler.seed = Seed(x, q); }},
         });
       }},
      {"suppression", [&](const json& v, const std::string& p) {
         ReadSection(v, p, {
             {"nms_iou", [&](const json& x, const std::string& q) {
                c.suppression.nms_iou = Unit(x, q); }},
             {"top_k", [&](const json& x, const std::string& q) {
                c.suppression.top_k = static_cast<std::size_t>(Integer(x, q, 0)); }},
             {"vote_iou", [&](const json& x, const std::string& q) {
                c.suppression.vote_iou = Unit(x, q); }},
             {"nested_eps", [&](const json& x, const std::string& q) {
                c.suppression.nested_eps = Number(x, q);
                if (c.suppression.nested_eps < 0.0) Bad(q, "must be non-negative"); }},
         });
       }},
      {"mlrp", [&](const json& v, const std::string& p) {
         ReadSection(v, p, {
             {"pooled_h", [&](const json& x, const std::string& q) {
                c.mlrp.pooled_h = static_cast<int>(Integer(x, q, 1)); }},
             {"pooled_w", [&](const json& x, const std::string& q) {
                c.mlrp.pooled_w = static_cast<int>(Integer(x, q, 1)); }},
             {"strides", [&](const json& x, const std::string& q) {
                c.mlrp.strides = PositiveList(x, q);
                if (c.mlrp.strides.size() != 2) Bad(q, "expected two strides"); }},
             {"bias", [&](const json& x, const std::string& q) {
                c.mlrp.bias = Boolean(x, q); }},
         });
       }},
      {"eval", [&](const json& v, const std::string& p) {
         ReadSection(v, p, {
             {"match_iou", [&](const json& x, const std::string& q) {
                c.eval.match_iou = Unit(x, q); }},
             {"top_n", [&](const json& x, const std::string& q) {
                c.eval.top_n = static_cast<std::size_t>(Integer(x, q, 0)); }},
             {"thresholds", [&](const json& x, const std::string& q) {
                c.eval.thresholds = PositiveList(x, q);
                for (std::size_t i = 0; i < c.eval.thresholds.size(); ++i) {
                  if (c.eval.thresholds[i] > 1.0 ||
                      (i > 0 && c.eval.thresholds[i] <= c.eval.thresholds[i - 1])) {
                    Bad(q, "must be ascending within (0, 1]");
                  }
                } }},
         });
       }},
      {"synth", [&](const json& v, const std::string& p) {
         ReadSection(v, p, {
             {"image_w", [&](const json& x, const std::string& q) {
                c.synth.image_w = static_cast<int>(Integer(x, q, 1)); }},
             {"image_h", [&](const json& x, const std::string& q) {
                c.synth.image_h = static_cast<int>(Integer(x, q, 1)); }},
             {"n_words", [&](const json& x, const std::string& q) {
                const auto [lo, hi] = Range(x, q);
                if (lo < 0 || lo != static_cast<int>(lo) || hi != static_cast<int>(hi)) {
                  Bad(q, "expected non-negative integers");
                }
                c.synth.min_words = static_cast<int>(lo);
                c.synth.max_words = static_cast<int>(hi); }},
             {"height_range", [&](const json& x, const std::string& q) {
                std::tie(c.synth.min_height, c.synth.max_height) = Range(x, q);
                if (!(c.synth.min_height > 0.0)) Bad(q, "must be positive"); }},
             {"ratio_range", [&](const json& x, const std::string& q) {
                std::tie(c.synth.min_ratio, c.synth.max_ratio) = Range(x, q);
                if (!(c.synth.min_ratio > 0.0)) Bad(q, "must be positive"); }},
             {"max_gt_iou", [&](const json& x, const std::string& q) {
                c.synth.max_gt_iou = Number(x, q);
                if (c.synth.max_gt_iou < 0.0 || c.synth.max_gt_iou >= 1.0) {
                  Bad(q, "must lie in [0, 1)");
                } }},
             {"seed", [&](const json& x, const std::string& q) {
                c.synth.seed = Seed(x, q); }},
         });
       }},
  });
  return c;
}

std::string SerializeConfig(const Config& c) {
  json doc = {
      {"priors",
       {{"scales", c.priors.scales},
        {"aspect_ratios", c.priors.aspect_ratios},
        {"stride", c.priors.stride},
        {"drop_cross_boundary", c.priors.drop_cross_boundary}}},
      {"sampler",
       {{"n_b", c.sampler.n_b},
        {"n_p", c.sampler.n_p},
        {"n_a", c.sampler.n_a},
        {"n_n", c.sampler.n_n},
        {"seed", c.sampler.seed}}},
      {"suppression",
       {{"nms_iou", c.suppression.nms_iou},
        {"top_k", c.suppression.top_k},
        {"vote_iou", c.suppression.vote_iou},
        {"nested_eps", c.suppression.nested_eps}}},
      {"mlrp",
       {{"pooled_h", c.mlrp.pooled_h},
        {"pooled_w", c.mlrp.pooled_w},
        {"strides", c.mlrp.strides},
        {"bias", c.mlrp.bias}}},
      {"eval",
       {{"match_iou", c.eval.match_iou},
        {"top_n", c.eval.top_n},
        {"thresholds", c.eval.thresholds}}},
      {"synth",
       {{"image_w", c.synth.image_w},
        {"image_h", c.synth.image_h},
        {"n_words", {c.synth.min_words, c.synth.max_words}},
        {"height_range", {c.synth.min_height, c.synth.max_height}},
        {"ratio_range", {c.synth.min_ratio, c.synth.max_ratio}},
        {"max_gt_iou", c.synth.max_gt_iou},
        {"seed", c.synth.seed}}},
  };
  return doc.dump(2) + "\n";
}

}  // namespace wordbox
