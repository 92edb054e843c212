#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stixel/cluster.hpp"
#include "stixel/depth_grid.hpp"
#include "stixel/generator.hpp"
#include "stixel/metrics.hpp"

namespace stixel::cli {

namespace fs = std::filesystem;

struct GridOptions {
  std::string kind = "linear";
  int bins = 64;
  double d_min = 4.0;
  double d_max = 66.0;
  double tangent_a = kDefaultTangentialA;

  DepthGrid build() const;
};

struct GenerateOptions {
  fs::path cloud;
  fs::path calib;
  std::string mode = "holistic";
  std::optional<fs::path> boxes;
  fs::path out;
  GridOptions grid;
  GenerationConfig config;
};

struct DecodeOptions {
  fs::path tensor;
  fs::path calib;
  GridOptions grid;
  double threshold = 0.38;
  fs::path out;
};

struct EvaluateOptions {
  fs::path pred_dir;
  fs::path anno_dir;
  fs::path calib;
  GridOptions grid;
  EvalConfig config;
  std::optional<fs::path> masks_dir;
  std::optional<fs::path> classmap;
  fs::path report;
  std::optional<fs::path> csv;
  std::optional<fs::path> svg;
  int jobs = 1;
};

struct ClusterOptions {
  fs::path world;
  fs::path calib;
  ClusterParams params;
  std::string feature = "footprint";
  std::optional<fs::path> out;
};

struct BenchOptions {
  std::string mode = "decode";
  std::size_t frames = 1000;
  std::size_t stixels = 2000;
  std::uint64_t seed = 1;
  std::optional<fs::path> out;
};

// Each command prints a one-line summary to stdout and throws stixel::Error
// on failure.
void run_generate(const GenerateOptions& opt);
void run_decode(const DecodeOptions& opt);
void run_evaluate(const EvaluateOptions& opt);
void run_cluster(const ClusterOptions& opt);
void run_bench(const BenchOptions& opt);

}  // namespace stixel::cli
