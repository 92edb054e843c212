#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stixel/camera.hpp"
#include "stixel/depth_grid.hpp"

namespace stixel {

inline constexpr int kDefaultStixelWidth = 8;

/// One vertical image stick. Rows follow image convention: v_top < v_bot,
/// v_bot is at most the image height.
struct Stixel {
  int col = 0;
  int v_top = 0;
  int v_bot = 0;
  double depth = 0.0;
  double prob = 1.0;
  int width_px = kDefaultStixelWidth;
  std::optional<std::uint8_t> label;

  /// Pixel column representing the stick laterally (its band center).
  double center_u() const { return col * width_px + 0.5 * width_px; }

  friend bool operator==(const Stixel&, const Stixel&) = default;
};

struct StixelWorld {
  std::vector<Stixel> stixels;
  /// Absent for worlds read from the compact wire format.
  std::optional<CameraCalib> calib;
  DepthGrid grid = DepthGrid::linear();
  ImageSize image;
  std::string frame_id;

  friend bool operator==(const StixelWorld&, const StixelWorld&) = default;
};

/// Creates an empty world whose image size is taken from the calibration.
StixelWorld make_world(const CameraCalib& calib, const DepthGrid& grid,
                       std::string frame_id = {});

/// Number of Stixel columns covering an image of `width` pixels.
inline int column_count(int width, int width_px = kDefaultStixelWidth) {
  return (width + width_px - 1) / width_px;
}

/// Lists every invariant violation; empty when the world is valid. With
/// `classification` set, more than one Stixel per (column, depth bin) is
/// reported as well.
std::vector<std::string> validate_world(const StixelWorld& world,
                                        bool classification = false);

/// A Stixel realized in world coordinates. Both ends sit at the Stixel depth
/// along the optical axis.
struct Segment3D {
  Eigen::Vector3d top;
  Eigen::Vector3d bot;

  Eigen::Vector3d midpoint() const { return 0.5 * (top + bot); }
};

Segment3D stixel_to_segment3d(const CameraCalib& calib, const Stixel& stixel);

}  // namespace stixel
