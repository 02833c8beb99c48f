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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "wordbox/config.h"
#include "wordbox/evaluation.h"
#include "wordbox/formats.h"
#include "wordbox/gradient_suite.h"
#include "wordbox/labeling.h"
#include "wordbox/losses.h"
#include "wordbox/mlrp.h"
#include "wordbox/pipeline.h"
#include "wordbox/priors.h"
#include "wordbox/suppression.h"
#include "wordbox/synth.h"

namespace wordbox::cli {
namespace {

namespace fs = std::filesystem;

// Invalid flag combination or value detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parse failure annotated with the file it came from.
class FileParseError : public std::runtime_error {
 public:
  FileParseError(const std::string& path, const ParseError& e)
      : std::runtime_error(path + ": " + e.what()), content_(e.content()) {}
  const std::string& content() const { return content_; }

 private:
  std::string content_;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Ground truth from a file or from every regular file of a directory. The
// default image id is the file stem without a leading "gt_".
GroundTruthMap ReadGroundTruth(const std::string& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(path);
  }
  GroundTruthMap merged;
  for (const fs::path& file : files) {
    std::string id = file.stem().string();
    if (id.rfind("gt_", 0) == 0) id = id.substr(3);
    try {
      for (auto& [image, entries] : ParseGroundTruth(ReadFile(file.string()), id)) {
        auto& dst = merged[image];
        dst.insert(dst.end(), entries.begin(), entries.end());
      }
    } catch (const ParseError& e) {
      throw FileParseError(file.string(), e);
    }
  }
  return merged;
}

DetectionsByImage ReadDetections(const std::string& path) {
  try {
    return ParseDetections(ReadFile(path));
  } catch (const ParseError& e) {
    throw FileParseError(path, e);
  }
}

// Writes to --out when given, otherwise to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw IoError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void CheckUnitInterval(double v, const char* flag) {
  if (!(v > 0.0) || v > 1.0) {
    throw UsageError(std::string(flag) + " must lie in (0, 1], got " +
                     FormatShortest(v));
  }
}

CLI::Validator UnitInterval() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        const auto v = ParseNumber(s);
        if (!v || !(*v > 0.0) || *v > 1.0) {
          return "threshold must be > 0 and <= 1, got " + s;
        }
        return {};
      },
      "(0,1]");
}

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> iou;
  std::optional<std::size_t> top_n;
  std::optional<double> eps;
  std::optional<double> lambda;
  std::vector<std::string> in;
  std::string gt;
  std::string out;

  // Subcommand-specific.
  std::optional<int> grid_m;
  std::optional<int> grid_n;
  double image_w = 640.0;
  double image_h = 480.0;
  std::string mode = "detection";
  bool no_force_best_match = false;
  bool sample = false;
  int scenes = 1;
  int pipeline_scenes = 50;
  std::string proposals_out;
  JitterOptions jitter;
  std::vector<std::string> grids;
  std::string weights;
  std::vector<double> roi;
  std::optional<int> pooled_h;
  std::optional<int> pooled_w;
  int points = 100;
  double sigma = 0.0;
  double gain = 0.75;
  int iterations = 3;
  std::string curve_out;

  Config config;
};

void RequireSeed(const Flags& f, const char* command) {
  if (!f.seed) {
    throw UsageError(std::string(command) + " is randomized and requires --seed");
  }
}

const std::string& SingleInput(const Flags& f, const char* command) {
  if (f.in.size() != 1) {
    throw UsageError(std::string(command) + " expects exactly one --in file");
  }
  return f.in.front();
}

// Subcommands

int CmdPriors(Flags& f, std::ostream& out) {
  const PriorConfig& pc = f.config.priors;
  const GridSize fitted = GridForImage(f.image_w, f.image_h, pc.stride);
  const int m = f.grid_m.value_or(fitted.rows);
  const int n = f.grid_n.value_or(fitted.cols);
  if (m < 1 || n < 1) throw UsageError("grid dimensions must be at least 1");
  const PriorLattice lattice = GeneratePriors(m, n, f.image_w, f.image_h, pc);

  Sink sink(f.out, out);
  *sink << "# row col prior x1 y1 x2 y2 excluded\n";
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (std::size_t p = 0; p < lattice.k; ++p) {
        const std::size_t idx = lattice.Index(i, j, p);
        const BBox& b = lattice.boxes[idx];
        *sink << i << ' ' << j << ' ' << p << ' ' << FormatFixed(b.x1) << ' '
              << FormatFixed(b.y1) << ' ' << FormatFixed(b.x2) << ' '
              << FormatFixed(b.y2) << ' ' << int{lattice.excluded[idx]}
              << '\n';
      }
    }
  }
  return kExitOk;
}

void WriteAssignment(std::ostream& os, const std::string& image,
                     const LabelAssignment& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << image << ' ' << i << ' ' << LabelName(a.labels[i]) << ' ';
    if (a.matched_gt[i]) {
      os << *a.matched_gt[i];
    } else {
      os << '-';
    }
    if (a.targets[i]) {
      const RegressionOffsets& t = *a.targets[i];
      os << ' ' << FormatFixed(t.tx) << ' ' << FormatFixed(t.ty) << ' '
         << FormatFixed(t.tw) << ' ' << FormatFixed(t.th);
    } else {
      os << " - - - -";
    }
    os << ' ' << FormatFixed(a.max_iou[i]) << '\n';
  }
}

int CmdAssign(Flags& f, std::ostream& out) {
  Stage stage;
  if (f.mode == "rpn") {
    stage = Stage::kRpn;
  } else if (f.mode == "detection") {
    stage = Stage::kDetection;
  } else {
    throw UsageError("--mode must be rpn or detection");
  }
  if (f.gt.empty()) throw UsageError("assign requires --gt");
  if (f.sample) RequireSeed(f, "assign --sample");
  if (f.in.empty() && stage == Stage::kDetection) {
    throw UsageError("detection-mode assign requires --in proposals");
  }
  if (f.in.size() > 1) throw UsageError("assign expects at most one --in file");

  const GroundTruthMap gts = ReadGroundTruth(f.gt);
  std::map<std::string, std::vector<BBox>> boxes;
  std::optional<PriorLattice> lattice;
  if (f.in.empty()) {
    // Proposal stage over the prior lattice of every ground-truth image.
    const PriorConfig& pc = f.config.priors;
    const GridSize grid = GridForImage(f.image_w, f.image_h, pc.stride);
    lattice = GeneratePriors(f.grid_m.value_or(grid.rows),
                             f.grid_n.value_or(grid.cols), f.image_w,
                             f.image_h, pc);
    for (const auto& [image, entries] : gts) boxes[image] = lattice->boxes;
  } else {
    for (const auto& [image, set] : ReadDetections(f.in.front())) {
      auto& dst = boxes[image];
      for (const ScoredBox& d : set.items) dst.push_back(d.box);
    }
  }

  SamplerConfig sampler = f.config.sampler;
  if (f.seed) sampler.seed = *f.seed;
  std::mt19937_64 rng(sampler.seed);

  Sink sink(f.out, out);
  if (f.sample) {
    *sink << "# image index label\n";
  } else {
    *sink << "# image index label matched_gt tx ty tw th max_iou\n";
  }
  for (const auto& [image, list] : boxes) {
    const auto it = gts.find(image);
    const std::vector<BBox> gt_boxes =
        it == gts.end() ? std::vector<BBox>{} : BoxesOf(it->second);
    LabelAssignment a;
    if (stage == Stage::kRpn) {
      a = lattice ? AssignRpnLabels(*lattice, gt_boxes, !f.no_force_best_match)
                  : AssignRpnLabels(list, gt_boxes, !f.no_force_best_match);
    } else {
      a = AssignDetectionLabels(list, gt_boxes);
    }
    if (f.sample) {
      for (const SampledIndex& s : SampleMinibatch(a, stage, sampler, rng)) {
        *sink << image << ' ' << s.index << ' ' << LabelName(s.label) << '\n';
      }
    } else {
      WriteAssignment(*sink, image, a);
    }
  }
  return kExitOk;
}

int CmdNms(Flags& f, std::ostream& out) {
  const double iou = f.iou.value_or(f.config.suppression.nms_iou);
  CheckUnitInterval(iou, "--iou");
  const std::size_t top_n = f.top_n.value_or(f.config.suppression.top_k);
  DetectionsByImage dets = ReadDetections(SingleInput(f, "nms"));
  for (auto& [image, set] : dets) set.items = Nms(set.items, iou, top_n);
  Sink sink(f.out, out);
  *sink << SerializeDetections(dets);
  return kExitOk;
}

int CmdVote(Flags& f, std::ostream& out) {
  const double iou = f.iou.value_or(f.config.suppression.vote_iou);
  CheckUnitInterval(iou, "--iou");
  if (f.in.empty()) throw UsageError("vote expects one --in file per iteration");

  std::map<std::string, std::vector<DetectionSet>> per_image;
  for (std::size_t t = 0; t < f.in.size(); ++t) {
    for (auto& [image, set] : ReadDetections(f.in[t])) {
      set.iteration = static_cast<int>(t + 1);
      per_image[image].push_back(std::move(set));
    }
  }
  DetectionsByImage voted;
  for (const auto& [image, sets] : per_image) {
    voted[image] = IterativeVote(sets, iou);
  }
  Sink sink(f.out, out);
  *sink << SerializeDetections(voted);
  return kExitOk;
}

int CmdFilter(Flags& f, std::ostream& out) {
  const double eps = f.eps.value_or(f.config.suppression.nested_eps);
  if (eps < 0.0) throw UsageError("--eps must be non-negative");
  DetectionsByImage dets = ReadDetections(SingleInput(f, "filter"));
  for (auto& [image, set] : dets) set.items = FilterNested(set.items, eps);
  Sink sink(f.out, out);
  *sink << SerializeDetections(dets);
  return kExitOk;
}

// Aligns detections and ground truth on the union of their image ids.
struct AlignedImages {
  std::vector<std::vector<ScoredBox>> detections;
  std::vector<std::vector<BBox>> gts;
};

AlignedImages Align(const DetectionsByImage& dets, const GroundTruthMap& gts,
                    bool text_only) {
  std::set<std::string> ids;
  for (const auto& [image, set] : dets) ids.insert(image);
  for (const auto& [image, entries] : gts) ids.insert(image);
  AlignedImages out;
  for (const std::string& id : ids) {
    std::vector<ScoredBox> d;
    if (const auto it = dets.find(id); it != dets.end()) {
      for (const ScoredBox& s : it->second.items) {
        if (!text_only || s.class_id == kTextClass) d.push_back(s);
      }
    }
    std::vector<BBox> g;
    if (const auto it = gts.find(id); it != gts.end()) g = BoxesOf(it->second);
    out.detections.push_back(std::move(d));
    out.gts.push_back(std::move(g));
  }
  return out;
}

int CmdEvalRecall(Flags& f, std::ostream& out) {
  if (f.gt.empty()) throw UsageError("eval-recall requires --gt");
  const std::size_t top_n = f.top_n.value_or(f.config.eval.top_n);
  const AlignedImages images =
      Align(ReadDetections(SingleInput(f, "eval-recall")), ReadGroundTruth(f.gt),
            /*text_only=*/false);
  const RecallCurve curve = ComputeRecallCurve(
      images.detections, images.gts, top_n, f.config.eval.thresholds);
  Sink sink(f.out, out);
  *sink << SerializeRecallCurve(curve);
  return kExitOk;
}

int CmdEvalPrf(Flags& f, std::ostream& out, std::ostream& err) {
  if (f.gt.empty()) throw UsageError("eval-prf requires --gt");
  const double iou = f.iou.value_or(f.config.eval.match_iou);
  CheckUnitInterval(iou, "--iou");
  const AlignedImages images =
      Align(ReadDetections(SingleInput(f, "eval-prf")), ReadGroundTruth(f.gt),
            /*text_only=*/true);
  std::vector<Prf> per_image;
  for (std::size_t i = 0; i < images.gts.size(); ++i) {
    per_image.push_back(
        MatchDetections(images.detections[i], images.gts[i], iou));
  }
  err << "note: simplified one-to-one IoU matching at " << FormatFixed(iou, 2)
      << ", not the ICDAR protocol\n";
  Sink sink(f.out, out);
  *sink << SerializePrf(AggregatePrf(per_image)) << '\n';
  return kExitOk;
}

std::string SceneId(int index) {
  std::string digits = std::to_string(index);
  return "scene_" + std::string(digits.size() < 4 ? 4 - digits.size() : 0, '0') +
         digits;
}

int CmdSynth(Flags& f, std::ostream& out) {
  RequireSeed(f, "synth");
  if (f.scenes < 1) throw UsageError("--scenes must be at least 1");
  if (f.jitter.jitter_frac < 0.0) throw UsageError("--jitter must be >= 0");
  if (f.jitter.per_gt < 0 || f.jitter.n_negatives < 0) {
    throw UsageError("--per-gt and --negatives must be >= 0");
  }
  f.jitter.noise_sigma = f.sigma;

  std::string gt_text;
  DetectionsByImage proposals;
  for (int i = 0; i < f.scenes; ++i) {
    SceneSpec spec = f.config.synth;
    spec.seed = SceneSeed(*f.seed, i);
    std::mt19937_64 rng(spec.seed);
    const SynthScene scene = GenerateScene(spec, rng);
    gt_text += SerializeScene(scene, SceneId(i));
    if (!f.proposals_out.empty()) {
      proposals[SceneId(i)].items = JitterProposals(
          scene.gts, f.jitter, spec.image_w, spec.image_h, rng);
    }
  }
  Sink sink(f.out, out);
  *sink << gt_text;
  if (!f.proposals_out.empty()) {
    Sink prop(f.proposals_out, out);
    *prop << SerializeDetections(proposals);
  }
  return kExitOk;
}

int CmdRoiPool(Flags& f, std::ostream& out) {
  if (f.grids.empty() || f.grids.size() > 2) {
    throw UsageError("roipool expects one or two --grid files");
  }
  if (f.roi.size() != 4) throw UsageError("--roi expects x1,y1,x2,y2");
  const int ph = f.pooled_h.value_or(f.config.mlrp.pooled_h);
  const int pw = f.pooled_w.value_or(f.config.mlrp.pooled_w);
  if (ph < 1 || pw < 1) throw UsageError("pooled size must be at least 1");

  std::vector<FeatureGrid> grids;
  for (const std::string& path : f.grids) {
    try {
      grids.push_back(ParseFeatureGrid(ReadFile(path)));
    } catch (const ParseError& e) {
      throw FileParseError(path, e);
    }
    grids.back().Validate();
  }
  const BBox roi = NormalizeCorners(f.roi[0], f.roi[1], f.roi[2], f.roi[3]);

  PooledFeature result;
  if (grids.size() == 1) {
    if (!f.weights.empty()) throw UsageError("--weights needs two --grid files");
    result = RoiMaxPool(grids[0], roi, ph, pw);
  } else {
    if (f.weights.empty()) throw UsageError("two grids require --weights");
    FusionWeights w;
    try {
      w = ParseFusionWeights(ReadFile(f.weights));
    } catch (const ParseError& e) {
      throw FileParseError(f.weights, e);
    }
    result = FuseMultiLevel(grids, roi, ph, pw, w);
  }
  Sink sink(f.out, out);
  *sink << SerializePooledFeature(result);
  return kExitOk;
}

int CmdLossCheck(Flags& f, std::ostream& out) {
  RequireSeed(f, "losscheck");
  if (f.points < 1) throw UsageError("--points must be at least 1");
  GradientSuiteOptions options;
  options.seed = *f.seed;
  options.points = f.points;
  options.eps = f.eps.value_or(1e-5);
  options.lambda = f.lambda.value_or(kRpnLambda);
  if (!(options.eps > 0.0)) throw UsageError("--eps must be positive");
  if (!(options.lambda > 0.0)) throw UsageError("--lambda must be positive");

  Sink sink(f.out, out);
  bool ok = true;
  for (const GradientCheckEntry& e : RunGradientSuite(options)) {
    const bool pass = e.max_relative_error < kGradientTolerance;
    ok = ok && pass;
    *sink << e.name << " points=" << e.points
          << " max_rel_err=" << FormatShortest(e.max_relative_error) << ' '
          << (pass ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kExitOk : kExitData;
}

int CmdPipeline(Flags& f, std::ostream& out) {
  RequireSeed(f, "pipeline");
  if (f.pipeline_scenes < 1) throw UsageError("--scenes must be at least 1");
  if (f.iterations < 1) throw UsageError("--iterations must be at least 1");
  if (f.sigma < 0.0) throw UsageError("--sigma must be >= 0");

  PipelineOptions options;
  options.seed = *f.seed;
  options.scenes = f.pipeline_scenes;
  options.top_n = f.top_n.value_or(f.config.eval.top_n);
  options.noise_sigma = f.sigma;
  options.refine_gain = f.gain;
  options.iterations = f.iterations;
  options.config = f.config;
  if (f.iou) {
    CheckUnitInterval(*f.iou, "--iou");
    options.config.suppression.vote_iou = *f.iou;
  }
  if (f.eps) options.config.suppression.nested_eps = *f.eps;

  const PipelineResult result = RunPipeline(options);
  Sink sink(f.out, out);
  *sink << "scenes=" << options.scenes << " top_n=" << options.top_n
        << " recall@" << FormatFixed(options.config.eval.match_iou, 2) << '='
        << FormatFixed(result.recall_at_match) << '\n';
  *sink << SerializePrf(result.prf) << '\n';
  if (!f.curve_out.empty()) {
    Sink curve(f.curve_out, out);
    *curve << SerializeRecallCurve(result.recall);
  }
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Word-box proposal and detection post-processing toolkit",
               "wordbox"};
  app.require_subcommand(1);
  app.fallthrough(false);

  Flags f;
  std::function<int()> action;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", f.config_path, "JSON configuration document")
        ->check(CLI::ExistingFile);
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", f.seed, "Random seed (required)");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", f.out, "Output path (default: stdout)");
  };
  auto add_in = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("--in", f.in, what)->check(CLI::ExistingFile);
  };
  auto add_gt = [&](CLI::App* cmd) {
    cmd->add_option("--gt", f.gt, "Ground-truth file or directory")
        ->check(CLI::ExistingPath);
  };
  auto add_iou = [&](CLI::App* cmd, const char* def) {
    cmd->add_option("--iou", f.iou, "IoU threshold")
        ->check(UnitInterval())
        ->default_str(def);
  };
  auto add_image = [&](CLI::App* cmd) {
    cmd->add_option("--image-w", f.image_w, "Image width in pixels")
        ->capture_default_str();
    cmd->add_option("--image-h", f.image_h, "Image height in pixels")
        ->capture_default_str();
    cmd->add_option("--grid-m", f.grid_m, "Feature grid rows")
        ->default_str("ceil(image-h / stride)");
    cmd->add_option("--grid-n", f.grid_n, "Feature grid columns")
        ->default_str("ceil(image-w / stride)");
  };

  auto* priors = app.add_subcommand("priors", "Generate the prior box lattice");
  add_config(priors);
  add_image(priors);
  add_out(priors);
  priors->callback([&] { action = [&] { return CmdPriors(f, out); }; });

  auto* assign = app.add_subcommand(
      "assign", "Label proposals (detection) or priors (rpn) against ground truth");
  add_config(assign);
  add_in(assign, "Proposals in detections format (rpn mode: omit to use priors)");
  add_gt(assign);
  add_out(assign);
  add_seed(assign);
  add_image(assign);
  assign->add_option("--mode", f.mode, "rpn or detection")
      ->capture_default_str();
  assign->add_flag("--no-force-best-match", f.no_force_best_match,
                   "rpn mode: do not force the best prior of each ground truth");
  assign->add_flag("--sample", f.sample,
                   "Emit a sampled minibatch instead of all labels");
  assign->callback([&] { action = [&] { return CmdAssign(f, out); }; });

  auto* nms = app.add_subcommand("nms", "Greedy non-maximum suppression per image");
  add_config(nms);
  add_in(nms, "Detections file");
  add_iou(nms, "0.7");
  nms->add_option("--top-n", f.top_n, "Boxes kept per image")->default_str("2000");
  add_out(nms);
  nms->callback([&] { action = [&] { return CmdNms(f, out); }; });

  auto* vote = app.add_subcommand(
      "vote", "Merge per-iteration detection files and suppress the union");
  add_config(vote);
  add_in(vote, "Detections file of one iteration (repeatable)");
  add_iou(vote, "0.3");
  add_out(vote);
  vote->callback([&] { action = [&] { return CmdVote(f, out); }; });

  auto* filter = app.add_subcommand(
      "filter", "Keep the best box of every group of nested boxes");
  add_config(filter);
  add_in(filter, "Detections file");
  filter->add_option("--eps", f.eps, "Containment tolerance in pixels")
      ->default_str("0");
  add_out(filter);
  filter->callback([&] { action = [&] { return CmdFilter(f, out); }; });

  auto* eval_recall = app.add_subcommand(
      "eval-recall", "Recall of top-N proposals across IoU thresholds");
  add_config(eval_recall);
  add_in(eval_recall, "Proposals in detections format");
  add_gt(eval_recall);
  eval_recall->add_option("--top-n", f.top_n, "Proposals per image")
      ->default_str("300");
  add_out(eval_recall);
  eval_recall->callback([&] { action = [&] { return CmdEvalRecall(f, out); }; });

  auto* eval_prf = app.add_subcommand(
      "eval-prf", "Precision, recall and F-measure (simplified matching)");
  add_config(eval_prf);
  add_in(eval_prf, "Detections file");
  add_gt(eval_prf);
  add_iou(eval_prf, "0.5");
  add_out(eval_prf);
  eval_prf->callback([&] { action = [&] { return CmdEvalPrf(f, out, err); }; });

  auto* synth = app.add_subcommand("synth", "Generate synthetic word scenes");
  add_config(synth);
  add_seed(synth);
  synth->add_option("--scenes", f.scenes, "Number of scenes")
      ->capture_default_str();
  add_out(synth);
  synth->add_option("--proposals", f.proposals_out,
                    "Also write jittered proposals (detections format)");
  synth->add_option("--per-gt", f.jitter.per_gt, "Jittered copies per word")
      ->capture_default_str();
  synth->add_option("--jitter", f.jitter.jitter_frac,
                    "Jitter as a fraction of the word extent")
      ->capture_default_str();
  synth->add_option("--negatives", f.jitter.n_negatives,
                    "Random boxes per scene")
      ->capture_default_str();
  synth->add_option("--sigma", f.sigma, "Score noise standard deviation")
      ->capture_default_str();
  synth->callback([&] { action = [&] { return CmdSynth(f, out); }; });

  auto* roipool = app.add_subcommand(
      "roipool", "ROI max pooling, or two-level pooling with 1x1 fusion");
  add_config(roipool);
  roipool->add_option("--grid", f.grids, "Feature grid file (one or two)")
      ->check(CLI::ExistingFile);
  roipool->add_option("--weights", f.weights, "Fusion weights file")
      ->check(CLI::ExistingFile);
  roipool->add_option("--roi", f.roi, "Region x1,y1,x2,y2 in image pixels")
      ->delimiter(',')
      ->expected(4);
  roipool->add_option("--pooled-h", f.pooled_h, "Output rows")->default_str("7");
  roipool->add_option("--pooled-w", f.pooled_w, "Output columns")
      ->default_str("7");
  add_out(roipool);
  roipool->callback([&] { action = [&] { return CmdRoiPool(f, out); }; });

  auto* losscheck = app.add_subcommand(
      "losscheck", "Finite-difference check of the loss and fusion gradients");
  add_seed(losscheck);
  losscheck->add_option("--points", f.points, "Random points per function")
      ->capture_default_str();
  losscheck->add_option("--eps", f.eps, "Central difference step")
      ->default_str("1e-05");
  losscheck->add_option("--lambda", f.lambda, "Regression loss weight")
      ->default_str("3");
  add_out(losscheck);
  losscheck->callback([&] { action = [&] { return CmdLossCheck(f, out); }; });

  auto* pipeline = app.add_subcommand(
      "pipeline", "End-to-end run on synthetic scenes with an oracle scorer");
  add_config(pipeline);
  add_seed(pipeline);
  pipeline->add_option("--scenes", f.pipeline_scenes, "Number of scenes")
      ->capture_default_str();
  pipeline->add_option("--top-n", f.top_n, "Proposals kept per scene")
      ->default_str("300");
  add_iou(pipeline, "0.3");
  pipeline->add_option("--eps", f.eps, "Nested-box containment tolerance")
      ->default_str("0");
  pipeline->add_option("--sigma", f.sigma, "Oracle score noise")
      ->capture_default_str();
  pipeline->add_option("--gain", f.gain,
                       "Oracle regressor step toward the matched word")
      ->capture_default_str();
  pipeline->add_option("--iterations", f.iterations,
                       "Detection sets merged by voting")
      ->default_str("3");
  pipeline->add_option("--curve", f.curve_out,
                       "Also write the recall curve (TSV)");
  add_out(pipeline);
  pipeline->callback([&] { action = [&] { return CmdPipeline(f, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!f.config_path.empty()) f.config = ParseConfig(ReadFile(f.config_path));
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FileParseError& e) {
    err << "error: " << e.what() << "\n";
    if (!e.content().empty()) err << "  | " << e.content() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace wordbox::cli
