#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "stixel/errors.hpp"

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

void add_grid_flags(CLI::App* cmd, stixel::cli::GridOptions& g) {
  cmd->add_option("--grid", g.kind, "Depth grid kind")
      ->check(CLI::IsMember({"linear", "tangential"}))
      ->capture_default_str();
  cmd->add_option("--bins", g.bins, "Number of depth bins")->capture_default_str();
  cmd->add_option("--d-min", g.d_min, "Nearest depth anchor in metres")->capture_default_str();
  cmd->add_option("--d-max", g.d_max, "Far end of the depth range in metres")
      ->capture_default_str();
  cmd->add_option("--tangent-a", g.tangent_a, "Tangent factor of the tangential grid")
      ->capture_default_str();
}

int exit_code_for(const stixel::Error& e) {
  if (dynamic_cast<const stixel::ConfigError*>(&e) || dynamic_cast<const stixel::RangeError*>(&e) ||
      dynamic_cast<const stixel::DomainError*>(&e) ||
      dynamic_cast<const stixel::CalibrationError*>(&e)) {
    return kExitUsage;
  }
  return kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = stixel::cli;
  CLI::App app{"Stixel World toolkit"};
  app.require_subcommand(1);

  cli::GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Ground-truth Stixels from a LiDAR point cloud");
  g->add_option("--cloud", gen.cloud, "Point cloud (.pcl binary or .csv)")
      ->required()
      ->check(CLI::ExistingFile);
  g->add_option("--calib", gen.calib, "Camera calibration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  g->add_option("--mode", gen.mode, "Generation rule")
      ->check(CLI::IsMember({"holistic", "bbox"}))
      ->capture_default_str();
  g->add_option("--boxes", gen.boxes, "3D boxes JSON (bbox mode)")->check(CLI::ExistingFile);
  g->add_option("--out", gen.out, "Output world (.json or wire frame)")->required();
  add_grid_flags(g, gen.grid);
  g->add_option("--depth-gap", gen.config.depth_gap_abs, "Absolute depth gap in metres")
      ->capture_default_str();
  g->add_option("--depth-gap-rel", gen.config.depth_gap_rel, "Depth gap relative to depth")
      ->capture_default_str();
  g->add_option("--min-points", gen.config.min_points_per_stixel, "Points per Stixel")
      ->capture_default_str();
  g->add_option("--ground-threshold", gen.config.z_gradient_thresh,
                "Height above local ground counted as obstacle")
      ->capture_default_str();
  g->add_option("--ground-cell", gen.config.ground_cell_size, "Ground grid cell in metres")
      ->capture_default_str();
  g->add_option("--v-gap", gen.config.v_gap_px, "Vertical hole in pixels that splits a Stixel")
      ->capture_default_str();

  cli::DecodeOptions dec;
  auto* d = app.add_subcommand("decode", "Threshold a network output tensor into Stixels");
  d->add_option("--tensor", dec.tensor, "Tensor file")->required()->check(CLI::ExistingFile);
  d->add_option("--calib", dec.calib, "Camera calibration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  d->add_option("--threshold", dec.threshold, "Probability threshold")->capture_default_str();
  d->add_option("--out", dec.out, "Output world (.json or wire frame)")->required();
  add_grid_flags(d, dec.grid);

  cli::EvaluateOptions ev;
  auto* e = app.add_subcommand("evaluate", "Precision/recall F1 sweep against 3D boxes");
  e->add_option("--pred-dir", ev.pred_dir, "Predictions: <id>.snxt, <id>.stx or <id>.json")
      ->required()
      ->check(CLI::ExistingDirectory);
  e->add_option("--anno-dir", ev.anno_dir, "Annotations: <id>.json box lists")
      ->required()
      ->check(CLI::ExistingDirectory);
  e->add_option("--calib", ev.calib, "Camera calibration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  e->add_option("--report", ev.report, "Report JSON path")->required();
  e->add_option("--csv", ev.csv, "PR curve CSV (default: report path with .csv)");
  e->add_option("--svg", ev.svg, "Optional PR curve plot");
  e->add_option("--masks", ev.masks_dir, "Label masks: <id>.pgm")
      ->check(CLI::ExistingDirectory);
  e->add_option("--classmap", ev.classmap, "Mask label vocabulary JSON")
      ->check(CLI::ExistingFile);
  e->add_option("--max-range", ev.config.max_range_m, "Box range cut-off in metres")
      ->capture_default_str();
  e->add_option("--fov", ev.config.fov_deg, "Horizontal FoV half-angle in degrees")
      ->capture_default_str();
  e->add_option("--inside-fraction", ev.config.inside_fraction,
                "Share of a Stixel inside a box to approve it")
      ->capture_default_str();
  e->add_option("--height-samples", ev.config.height_samples, "Samples along each Stixel")
      ->capture_default_str();
  e->add_option("--thresholds", ev.config.thresholds, "Probability thresholds, ascending")
      ->delimiter(',');
  e->add_option("--jobs", ev.jobs, "Worker threads")->capture_default_str();
  add_grid_flags(e, ev.grid);

  cli::ClusterOptions cl;
  auto* c = app.add_subcommand("cluster", "DBSCAN over Stixel footprints");
  c->add_option("--world", cl.world, "World (.json or wire frame)")
      ->required()
      ->check(CLI::ExistingFile);
  c->add_option("--calib", cl.calib, "Camera calibration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  c->add_option("--eps", cl.params.eps, "Neighbourhood radius in metres")->capture_default_str();
  c->add_option("--min-pts", cl.params.min_pts, "Neighbours for a core point")
      ->capture_default_str();
  c->add_option("--feature", cl.feature, "Clustering feature")
      ->check(CLI::IsMember({"footprint", "centroid"}))
      ->capture_default_str();
  c->add_option("--out", cl.out, "Cluster JSON");

  cli::BenchOptions be;
  auto* b = app.add_subcommand("bench", "Latency of decode or clustering on random inputs");
  b->add_option("--mode", be.mode, "What to time")
      ->check(CLI::IsMember({"decode", "cluster"}))
      ->capture_default_str();
  b->add_option("--frames", be.frames, "Number of random frames")->capture_default_str();
  b->add_option("--stixels", be.stixels, "Stixels per cluster frame")->capture_default_str();
  b->add_option("--seed", be.seed, "Random seed")->capture_default_str();
  b->add_option("--out", be.out, "Also write the CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*g) cli::run_generate(gen);
    if (*d) cli::run_decode(dec);
    if (*e) cli::run_evaluate(ev);
    if (*c) cli::run_cluster(cl);
    if (*b) cli::run_bench(be);
  } catch (const stixel::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return exit_code_for(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitData;
  }
  return 0;
}
