#include "stixel/ground.hpp"

#include <algorithm>
#include <cmath>

#include "stixel/errors.hpp"

namespace stixel {

namespace {

using CellKey = std::pair<int, int>;

CellKey cell_of(double x, double y, double cell_size) {
  return {static_cast<int>(std::floor(x / cell_size)),
          static_cast<int>(std::floor(y / cell_size))};
}

}  // namespace

std::optional<double> GroundModel::height_at(double x, double y) const {
  if (auto it = cell_heights.find(cell_of(x, y, cell_size)); it != cell_heights.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::size_t GroundModel::inlier_count() const {
  return static_cast<std::size_t>(std::count(inlier_mask.begin(), inlier_mask.end(), true));
}

GridElevationSegmenter::GridElevationSegmenter(GridElevationParams params)
    : params_(params) {
  if (!(params_.cell_size > 0.0) || !(params_.height_threshold > 0.0)) {
    throw ConfigError("ground segmenter: cell size and height threshold must be positive");
  }
  if (!(params_.floor_quantile >= 0.0 && params_.floor_quantile <= 1.0)) {
    throw ConfigError("ground segmenter: floor quantile must lie in [0, 1]");
  }
  if (params_.neighborhood < 0) {
    throw ConfigError("ground segmenter: neighborhood must be non-negative");
  }
}

GroundModel GridElevationSegmenter::segment(const PointCloud& cloud) const {
  GroundModel model;
  model.cell_size = params_.cell_size;
  model.inlier_mask.assign(cloud.size(), false);
  if (cloud.empty()) return model;

  std::map<CellKey, std::vector<double>> heights;
  std::vector<CellKey> keys;
  keys.reserve(cloud.size());
  for (const auto& p : cloud.points) {
    keys.push_back(cell_of(p.x(), p.y(), params_.cell_size));
    heights[keys.back()].push_back(p.z());
  }

  std::map<CellKey, double> floors;
  for (auto& [key, zs] : heights) {
    const auto k = static_cast<std::size_t>(
        std::floor(params_.floor_quantile * static_cast<double>(zs.size() - 1)));
    std::nth_element(zs.begin(), zs.begin() + static_cast<std::ptrdiff_t>(k), zs.end());
    floors.emplace(key, zs[k]);
  }

  const int r = params_.neighborhood;
  for (const auto& [key, own_floor] : floors) {
    double ground = own_floor;
    for (int dx = -r; dx <= r; ++dx) {
      for (int dy = -r; dy <= r; ++dy) {
        if (auto it = floors.find({key.first + dx, key.second + dy}); it != floors.end()) {
          ground = std::min(ground, it->second);
        }
      }
    }
    model.cell_heights.emplace(key, ground);
  }

  for (std::size_t i = 0; i < cloud.size(); ++i) {
    model.inlier_mask[i] =
        cloud.points[i].z() - model.cell_heights.at(keys[i]) <= params_.height_threshold;
  }
  return model;
}

GroundModel segment_ground(const PointCloud& cloud, double cell_size,
                           double height_threshold) {
  GridElevationParams params;
  params.cell_size = cell_size;
  params.height_threshold = height_threshold;
  return GridElevationSegmenter(params).segment(cloud);
}

}  // namespace stixel
