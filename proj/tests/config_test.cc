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

#include <string>

#include <gtest/gtest.h>

namespace wordbox {
namespace {

TEST(ParseConfigTest, EmptyDocumentGivesDefaults) {
  const Config c = ParseConfig("{}");
  EXPECT_EQ(c.priors.k(), 24u);
  EXPECT_EQ(c.suppression.nms_iou, 0.7);
  EXPECT_EQ(c.suppression.top_k, 2000u);
  EXPECT_EQ(c.suppression.vote_iou, 0.3);
  EXPECT_EQ(c.eval.top_n, 300u);
  EXPECT_EQ(c.sampler.n_b, 128);
  EXPECT_EQ(c.mlrp.pooled_h, 7);
}

TEST(ParseConfigTest, OverridesFields) {
  const Config c = ParseConfig(R"({
    "priors": {"scales": [16, 32], "aspect_ratios": [1.0], "stride": 8},
    "sampler": {"n_b": 64, "seed": 9},
    "suppression": {"nms_iou": 0.6, "top_k": 100, "nested_eps": 0.5},
    "eval": {"match_iou": 0.6, "top_n": 50, "thresholds": [0.5, 0.7]},
    "synth": {"image_w": 320, "n_words": [2, 4], "seed": 3}
  })");
  EXPECT_EQ(c.priors.k(), 2u);
  EXPECT_EQ(c.priors.stride, 8.0);
  EXPECT_EQ(c.sampler.n_b, 64);
  EXPECT_EQ(c.sampler.seed, 9u);
  EXPECT_EQ(c.suppression.nms_iou, 0.6);
  EXPECT_EQ(c.suppression.top_k, 100u);
  EXPECT_EQ(c.eval.thresholds, (std::vector<double>{0.5, 0.7}));
  EXPECT_EQ(c.synth.image_w, 320);
  EXPECT_EQ(c.synth.min_words, 2);
  EXPECT_EQ(c.synth.max_words, 4);
}

std::string ErrorOf(const std::string& text) {
  try {
    ParseConfig(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "no error";
}

TEST(ParseConfigTest, UnknownKeysAreErrors) {
  EXPECT_EQ(ErrorOf(R"({"priors": {"foo": 1}})"),
            "config $.priors.foo: unknown key");
  EXPECT_EQ(ErrorOf(R"({"bogus": {}})"), "config $.bogus: unknown key");
}

TEST(ParseConfigTest, InvalidValuesAreErrors) {
  EXPECT_NE(ErrorOf(R"({"suppression": {"nms_iou": 0}})"), "no error");
  EXPECT_NE(ErrorOf(R"({"suppression": {"nms_iou": 1.5}})"), "no error");
  EXPECT_NE(ErrorOf(R"({"priors": {"scales": []}})"), "no error");
  EXPECT_NE(ErrorOf(R"({"priors": {"stride": "16"}})"), "no error");
  EXPECT_NE(ErrorOf(R"({"sampler": {"n_b": -1}})"), "no error");
  EXPECT_NE(ErrorOf("{not json"), "no error");
  EXPECT_NE(ErrorOf("[]"), "no error");
}

TEST(SerializeConfigTest, RoundTrip) {
  Config c;
  c.priors.scales = {20, 40};
  c.suppression.top_k = 77;
  c.synth.max_words = 5;
  const Config back = ParseConfig(SerializeConfig(c));
  EXPECT_EQ(back.priors.scales, c.priors.scales);
  EXPECT_EQ(back.suppression.top_k, 77u);
  EXPECT_EQ(back.synth.max_words, 5);
  EXPECT_EQ(SerializeConfig(back), SerializeConfig(c));
}

}  // namespace
}  // namespace wordbox
