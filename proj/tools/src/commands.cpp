#include "commands.hpp"

#include <cstdio>
#include <iostream>
#include <map>

#include "bench.hpp"
#include "stixel/box3d.hpp"
#include "stixel/camera.hpp"
#include "stixel/decoder.hpp"
#include "stixel/errors.hpp"
#include "stixel/io.hpp"
#include "stixel/point_cloud.hpp"
#include "stixel/segmentation.hpp"
#include "stixel/tensor.hpp"
#include "stixel/wire.hpp"

namespace stixel::cli {

namespace {

// Frame id -> file, for every regular file in `dir` with one of `extensions`.
std::map<std::string, fs::path> list_frames(const fs::path& dir,
                                            const std::vector<std::string>& extensions) {
  if (!fs::is_directory(dir)) throw ConfigError(dir.string() + " is not a directory");
  std::map<std::string, fs::path> frames;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (std::find(extensions.begin(), extensions.end(), ext) == extensions.end()) continue;
    const auto id = entry.path().stem().string();
    if (!frames.emplace(id, entry.path()).second) {
      throw AlignmentError("frame " + id + " appears twice in " + dir.string());
    }
  }
  return frames;
}

}  // namespace

DepthGrid GridOptions::build() const {
  if (kind == "linear") return DepthGrid::linear(bins, d_min, d_max);
  if (kind == "tangential") return DepthGrid::tangential(bins, d_min, d_max, tangent_a);
  throw ConfigError("unknown grid kind '" + kind + "'");
}

void run_generate(const GenerateOptions& opt) {
  const auto calib = load_calib(opt.calib);
  const auto grid = opt.grid.build();
  const auto cloud = load_point_cloud(opt.cloud);
  StixelWorld world;
  if (opt.mode == "holistic") {
    world = generate_holistic(cloud, calib, grid, opt.config);
  } else if (opt.mode == "bbox") {
    if (!opt.boxes) throw ConfigError("bbox mode needs --boxes");
    world = generate_bbox_rule(cloud, load_boxes(*opt.boxes), calib, grid, opt.config);
  } else {
    throw ConfigError("unknown mode '" + opt.mode + "'");
  }
  world.frame_id = opt.cloud.stem().string();
  wire::save_world(opt.out, world);
  std::cout << world.stixels.size() << " stixels\n";
}

void run_decode(const DecodeOptions& opt) {
  const auto calib = load_calib(opt.calib);
  const auto grid = opt.grid.build();
  auto result = decode(load_tensor(opt.tensor), calib, grid, opt.threshold);
  result.world.frame_id = opt.tensor.stem().string();
  wire::save_world(opt.out, result.world);
  std::cout << result.world.stixels.size() << " stixels";
  if (result.degenerate > 0) std::cout << " (" << result.degenerate << " degenerate cells dropped)";
  std::cout << '\n';
}

void run_evaluate(const EvaluateOptions& opt) {
  if (opt.masks_dir.has_value() != opt.classmap.has_value()) {
    throw ConfigError("--masks and --classmap go together");
  }
  const auto calib = load_calib(opt.calib);
  const auto grid = opt.grid.build();

  std::map<std::string, Prediction> predictions;
  for (const auto& [id, path] : list_frames(opt.pred_dir, {".snxt", ".stx", ".json"})) {
    if (path.extension() == ".snxt") {
      predictions.emplace(id, load_tensor(path));
    } else {
      predictions.emplace(id, wire::load_world(path));
    }
  }
  std::map<std::string, std::vector<Box3D>> annotations;
  for (const auto& [id, path] : list_frames(opt.anno_dir, {".json"})) {
    annotations.emplace(id, load_boxes(path));
  }

  std::optional<SegmentationInputs> seg;
  if (opt.masks_dir) {
    seg.emplace();
    seg->classmap = ClassMap::from_json(read_text(*opt.classmap));
    for (const auto& [id, path] : list_frames(*opt.masks_dir, {".pgm"})) {
      seg->masks.emplace(id, load_pgm(path));
    }
  }

  const auto report = f1_sweep(predictions, annotations, calib, grid, opt.config,
                               seg ? &*seg : nullptr, opt.jobs);
  write_text(opt.report, report_to_json(report));
  auto csv = opt.csv.value_or(fs::path(opt.report).replace_extension(".csv"));
  write_text(csv, report_to_csv(report));
  if (opt.svg) write_text(*opt.svg, report_to_svg(report));

  char line[64];
  std::snprintf(line, sizeof line, "average F1: %.4f", report.average_f1);
  std::cout << line << " over " << report.frames.size() << " frames\n";
}

void run_cluster(const ClusterOptions& opt) {
  const auto calib = load_calib(opt.calib);
  const auto world = wire::load_world(opt.world);
  ClusterParams params = opt.params;
  if (opt.feature == "footprint") {
    params.feature = ClusterFeature::kFootprintXZ;
  } else if (opt.feature == "centroid") {
    params.feature = ClusterFeature::kCentroid3D;
  } else {
    throw ConfigError("unknown feature '" + opt.feature + "'");
  }
  const auto set = cluster(world, calib, params);
  if (opt.out) write_text(*opt.out, clusters_to_json(set, world, calib));
  std::cout << set.clusters.size() << " clusters\n";
}

void run_bench(const BenchOptions& opt) {
  bench::LatencyStats stats;
  if (opt.mode == "decode") {
    stats = bench::bench_decode(opt.frames, opt.seed);
  } else if (opt.mode == "cluster") {
    stats = bench::bench_cluster(opt.frames, opt.stixels, opt.seed);
  } else {
    throw ConfigError("unknown bench mode '" + opt.mode + "'");
  }
  const auto text = bench::csv_header() + "\n" + bench::to_csv_row(stats) + "\n";
  if (opt.out) write_text(*opt.out, text);
  std::cout << text;
}

}  // namespace stixel::cli
