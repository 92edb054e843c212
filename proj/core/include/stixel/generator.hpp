#pragma once

#include <vector>

#include "stixel/box3d.hpp"
#include "stixel/camera.hpp"
#include "stixel/depth_grid.hpp"
#include "stixel/ground.hpp"
#include "stixel/point_cloud.hpp"
#include "stixel/stixel.hpp"

namespace stixel {

struct GenerationConfig {
  int stixel_width_px = kDefaultStixelWidth;
  /// A new Stixel starts where consecutive depths differ by more than
  /// max(depth_gap_abs, depth_gap_rel * w).
  double depth_gap_abs = 2.0;
  double depth_gap_rel = 0.1;
  int min_points_per_stixel = 3;
  /// Elevation above local ground from which a point counts as obstacle.
  double z_gradient_thresh = 0.3;
  /// Largest vertical pixel gap tolerated inside one Stixel.
  double v_gap_px = 12.0;
  double ground_cell_size = 1.0;
};

/// Throws ConfigError when a threshold is not positive.
void validate(const GenerationConfig& config);

/// Splits the projected points of one column into Stixels. Each cluster keeps
/// the full vertical extent of its points and the median depth.
std::vector<Stixel> cut_column_stixels(std::vector<ImagePoint> column_points, int col,
                                       const GenerationConfig& config);

/// Every non-ground return becomes part of an obstacle Stixel.
StixelWorld generate_holistic(const PointCloud& cloud, const CameraCalib& calib,
                              const DepthGrid& grid, const GenerationConfig& config,
                              const GroundSegmenter& segmenter);
StixelWorld generate_holistic(const PointCloud& cloud, const CameraCalib& calib,
                              const DepthGrid& grid, const GenerationConfig& config = {});

/// Only returns inside an annotated box are used, one box at a time, and every
/// Stixel carries the class of its box as label.
StixelWorld generate_bbox_rule(const PointCloud& cloud, const std::vector<Box3D>& boxes,
                               const CameraCalib& calib, const DepthGrid& grid,
                               const GenerationConfig& config,
                               const GroundSegmenter& segmenter);
StixelWorld generate_bbox_rule(const PointCloud& cloud, const std::vector<Box3D>& boxes,
                               const CameraCalib& calib, const DepthGrid& grid,
                               const GenerationConfig& config = {});

}  // namespace stixel
