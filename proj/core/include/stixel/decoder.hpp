#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stixel/camera.hpp"
#include "stixel/depth_grid.hpp"
#include "stixel/stixel.hpp"
#include "stixel/tensor.hpp"

namespace stixel {

struct DecodeResult {
  StixelWorld world;
  /// Cells above threshold dropped because v_top >= v_bot after rounding.
  std::size_t degenerate = 0;
};

/// Emits one Stixel per (bin, column) cell whose probability strictly exceeds
/// `threshold`. Throws ConfigError when the tensor does not fit grid or camera.
DecodeResult decode(const PredictionTensor& tensor, const CameraCalib& calib,
                    const DepthGrid& grid, double threshold,
                    int width_px = kDefaultStixelWidth);

/// One decoded world per threshold; thresholds must be ascending.
std::vector<StixelWorld> sweep_thresholds(const PredictionTensor& tensor,
                                          const CameraCalib& calib, const DepthGrid& grid,
                                          std::span<const double> thresholds,
                                          int width_px = kDefaultStixelWidth);

/// 0.1, 0.2, ..., 0.9.
std::vector<double> default_thresholds();

}  // namespace stixel
