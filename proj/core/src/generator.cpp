#include "stixel/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include "stixel/errors.hpp"

namespace stixel {

namespace {

GridElevationSegmenter default_segmenter(const GenerationConfig& config) {
  GridElevationParams params;
  params.cell_size = config.ground_cell_size;
  params.height_threshold = config.z_gradient_thresh;
  return GridElevationSegmenter(params);
}

double median_depth(std::vector<double> ws) {
  const auto mid = ws.size() / 2;
  std::nth_element(ws.begin(), ws.begin() + static_cast<std::ptrdiff_t>(mid), ws.end());
  const double upper = ws[mid];
  if (ws.size() % 2 == 1) return upper;
  const double lower = *std::max_element(ws.begin(), ws.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

void emit(std::vector<ImagePoint>::const_iterator first,
          std::vector<ImagePoint>::const_iterator last, int col,
          const GenerationConfig& config, std::vector<Stixel>& out) {
  if (last - first < config.min_points_per_stixel) return;
  std::vector<double> ws;
  double v_min = first->v;
  double v_max = first->v;
  for (auto it = first; it != last; ++it) {
    ws.push_back(it->w);
    v_min = std::min(v_min, it->v);
    v_max = std::max(v_max, it->v);
  }
  Stixel s;
  s.col = col;
  s.v_top = static_cast<int>(std::floor(v_min));
  s.v_bot = std::max(static_cast<int>(std::ceil(v_max)), s.v_top + 1);
  s.depth = median_depth(std::move(ws));
  s.prob = 1.0;
  s.width_px = config.stixel_width_px;
  out.push_back(s);
}

/// Projects the selected points and buckets them by Stixel column.
std::map<int, std::vector<ImagePoint>> bin_columns(const PointCloud& cloud,
                                                   const std::vector<bool>& keep,
                                                   const CameraCalib& calib,
                                                   const DepthGrid& grid,
                                                   const GenerationConfig& config) {
  std::map<int, std::vector<ImagePoint>> columns;
  const ImageSize image = calib.image();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!keep[i]) continue;
    if (calib.world_to_camera(cloud.points[i]).z() <= 0.0) continue;
    const ImagePoint p = project_point(calib, cloud.points[i]);
    if (p.u < 0.0 || p.u >= image.width || p.v < 0.0 || p.v >= image.height) continue;
    if (!grid.contains(p.w)) continue;
    const int col = static_cast<int>(std::floor(p.u / config.stixel_width_px));
    columns[col].push_back(p);
  }
  return columns;
}

void cut_all(std::map<int, std::vector<ImagePoint>> columns, const GenerationConfig& config,
             std::optional<std::uint8_t> label, std::vector<Stixel>& out) {
  for (auto& [col, points] : columns) {
    for (Stixel s : cut_column_stixels(std::move(points), col, config)) {
      s.label = label;
      out.push_back(s);
    }
  }
}

}  // namespace

void validate(const GenerationConfig& config) {
  if (config.stixel_width_px <= 0 || !(config.depth_gap_abs > 0.0) ||
      !(config.depth_gap_rel > 0.0) || config.min_points_per_stixel <= 0 ||
      !(config.z_gradient_thresh > 0.0) || !(config.v_gap_px > 0.0) ||
      !(config.ground_cell_size > 0.0)) {
    throw ConfigError("generation thresholds must all be positive");
  }
}

std::vector<Stixel> cut_column_stixels(std::vector<ImagePoint> column_points, int col,
                                       const GenerationConfig& config) {
  std::vector<Stixel> out;
  if (column_points.empty()) return out;
  auto by_depth = [](const ImagePoint& a, const ImagePoint& b) {
    return std::tie(a.w, a.v, a.u) < std::tie(b.w, b.v, b.u);
  };
  std::sort(column_points.begin(), column_points.end(), by_depth);

  auto depth_start = column_points.begin();
  for (auto it = column_points.begin(); it != column_points.end(); ++it) {
    const auto next = std::next(it);
    const bool depth_break =
        next == column_points.end() ||
        next->w - it->w > std::max(config.depth_gap_abs, config.depth_gap_rel * it->w);
    if (!depth_break) continue;

    // Inside one depth layer, split again wherever the rows leave a hole.
    std::sort(depth_start, next,
              [](const ImagePoint& a, const ImagePoint& b) {
                return std::tie(a.v, a.w, a.u) < std::tie(b.v, b.w, b.u);
              });
    auto run_start = depth_start;
    for (auto r = depth_start; r != next; ++r) {
      const auto r_next = std::next(r);
      if (r_next == next || r_next->v - r->v > config.v_gap_px) {
        emit(run_start, r_next, col, config, out);
        run_start = r_next;
      }
    }
    depth_start = next;
  }
  std::sort(out.begin(), out.end(), [](const Stixel& a, const Stixel& b) {
    return std::tie(a.depth, a.v_top) < std::tie(b.depth, b.v_top);
  });
  return out;
}

StixelWorld generate_holistic(const PointCloud& cloud, const CameraCalib& calib,
                              const DepthGrid& grid, const GenerationConfig& config,
                              const GroundSegmenter& segmenter) {
  validate(config);
  StixelWorld world = make_world(calib, grid);
  if (cloud.empty()) return world;

  const GroundModel ground = segmenter.segment(cloud);
  std::vector<bool> obstacle(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) obstacle[i] = !ground.inlier_mask[i];

  cut_all(bin_columns(cloud, obstacle, calib, grid, config), config, std::nullopt,
          world.stixels);
  return world;
}

StixelWorld generate_holistic(const PointCloud& cloud, const CameraCalib& calib,
                              const DepthGrid& grid, const GenerationConfig& config) {
  validate(config);
  return generate_holistic(cloud, calib, grid, config, default_segmenter(config));
}

StixelWorld generate_bbox_rule(const PointCloud& cloud, const std::vector<Box3D>& boxes,
                               const CameraCalib& calib, const DepthGrid& grid,
                               const GenerationConfig& config,
                               const GroundSegmenter& segmenter) {
  validate(config);
  StixelWorld world = make_world(calib, grid);
  if (cloud.empty() || boxes.empty()) return world;

  const GroundModel ground = segmenter.segment(cloud);
  std::vector<bool> keep(cloud.size());
  for (const Box3D& box : boxes) {
    validate_box(box);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      keep[i] = !ground.inlier_mask[i] && box.contains(cloud.points[i]);
    }
    cut_all(bin_columns(cloud, keep, calib, grid, config), config,
            static_cast<std::uint8_t>(box.cls), world.stixels);
  }
  return world;
}

StixelWorld generate_bbox_rule(const PointCloud& cloud, const std::vector<Box3D>& boxes,
                               const CameraCalib& calib, const DepthGrid& grid,
                               const GenerationConfig& config) {
  validate(config);
  return generate_bbox_rule(cloud, boxes, calib, grid, config, default_segmenter(config));
}

}  // namespace stixel
