#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stixel/camera.hpp"
#include "stixel/depth_grid.hpp"
#include "stixel/stixel.hpp"
#include "stixel/tensor.hpp"

namespace stixel::bench {

struct LatencyStats {
  std::string name;
  std::size_t runs = 0;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p90_ms = 0.0;
  double p99_ms = 0.0;
  double max_ms = 0.0;
};

/// Nearest-rank percentiles over raw samples in milliseconds.
LatencyStats summarize(std::string name, std::vector<double> samples_ms);

std::string csv_header();
std::string to_csv_row(const LatencyStats& stats);

/// Camera matching the network output raster: 1920x1280, f = 2000 px,
/// mounted 1.7 m above the ground looking along world x.
CameraCalib reference_camera();

/// Tensor of shape [3, D, C] with uniform probabilities and ordered rows.
PredictionTensor random_tensor(std::uint64_t seed, int depth_bins = 64, int columns = 240);

/// World of `count` Stixels gathered around a handful of objects plus clutter.
StixelWorld random_scene(std::uint64_t seed, std::size_t count);

/// Decode plus threshold of one random (3, 64, 240) tensor per frame.
LatencyStats bench_decode(std::size_t frames, std::uint64_t seed = 1, double threshold = 0.38);

/// DBSCAN with default parameters on one random scene per frame.
LatencyStats bench_cluster(std::size_t frames, std::size_t stixels = 2000,
                           std::uint64_t seed = 1);

}  // namespace stixel::bench
