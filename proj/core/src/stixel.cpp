#include "stixel/stixel.hpp"

#include <map>
#include <sstream>
#include <utility>

namespace stixel {

StixelWorld make_world(const CameraCalib& calib, const DepthGrid& grid,
                       std::string frame_id) {
  StixelWorld world;
  world.calib = calib;
  world.grid = grid;
  world.image = calib.image();
  world.frame_id = std::move(frame_id);
  return world;
}

std::vector<std::string> validate_world(const StixelWorld& world,
                                        bool classification) {
  std::vector<std::string> issues;
  auto report = [&](std::size_t i, const std::string& what) {
    std::ostringstream os;
    os << "stixel " << i << ": " << what;
    issues.push_back(os.str());
  };
  if (world.image.width <= 0 || world.image.height <= 0) {
    issues.emplace_back("world: image size must be positive");
    return issues;
  }
  if (world.calib && world.calib->image() != world.image) {
    issues.emplace_back("world: image size differs from calibration");
  }

  std::map<std::pair<int, int>, std::size_t> occupied;
  for (std::size_t i = 0; i < world.stixels.size(); ++i) {
    const Stixel& s = world.stixels[i];
    if (s.width_px <= 0) {
      report(i, "width_px must be positive");
      continue;
    }
    if (s.col < 0 || s.col >= column_count(world.image.width, s.width_px)) {
      report(i, "column out of range");
    }
    if (s.v_top < 0 || s.v_top >= s.v_bot || s.v_bot > world.image.height) {
      report(i, "rows violate 0 <= v_top < v_bot <= height");
    }
    if (!world.grid.contains(s.depth)) {
      report(i, "depth outside grid range");
    }
    if (!(s.prob >= 0.0 && s.prob <= 1.0)) {
      report(i, "probability outside [0, 1]");
    }
    if (classification && world.grid.contains(s.depth)) {
      const auto key = std::make_pair(s.col, world.grid.depth_to_bin(s.depth));
      if (auto [it, fresh] = occupied.emplace(key, i); !fresh) {
        std::ostringstream os;
        os << "shares column " << key.first << ", depth bin " << key.second
           << " with stixel " << it->second;
        report(i, os.str());
      }
    }
  }
  return issues;
}

Segment3D stixel_to_segment3d(const CameraCalib& calib, const Stixel& stixel) {
  const double u = stixel.center_u();
  return {backproject_point(calib, u, stixel.v_top, stixel.depth),
          backproject_point(calib, u, stixel.v_bot, stixel.depth)};
}

}  // namespace stixel
