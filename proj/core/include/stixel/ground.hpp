#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stixel/point_cloud.hpp"

namespace stixel {

/// Ground/obstacle partition of a cloud plus the elevation map that produced it.
struct GroundModel {
  std::vector<bool> inlier_mask;  // true = ground
  double cell_size = 1.0;
  std::map<std::pair<int, int>, double> cell_heights;

  /// Local ground height at a horizontal position, if the cell was observed.
  std::optional<double> height_at(double x, double y) const;
  std::size_t inlier_count() const;
};

class GroundSegmenter {
 public:
  virtual ~GroundSegmenter() = default;
  virtual GroundModel segment(const PointCloud& cloud) const = 0;
};

struct GridElevationParams {
  double cell_size = 1.0;
  /// Points higher than this above local ground are obstacles.
  double height_threshold = 0.3;
  /// Quantile of a cell's heights taken as its floor.
  double floor_quantile = 0.05;
  /// Local ground is the lowest floor within this many cells (Chebyshev).
  int neighborhood = 1;
};

/// Cell-grid elevation model: every horizontal cell takes a low quantile of
/// its point heights as floor, local ground is the minimum floor over the
/// surrounding cells, and points within the height threshold are ground.
class GridElevationSegmenter final : public GroundSegmenter {
 public:
  explicit GridElevationSegmenter(GridElevationParams params = {});
  GroundModel segment(const PointCloud& cloud) const override;

  const GridElevationParams& params() const { return params_; }

 private:
  GridElevationParams params_;
};

GroundModel segment_ground(const PointCloud& cloud, double cell_size,
                           double height_threshold = 0.3);

}  // namespace stixel
