#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "stixel/camera.hpp"

namespace stixel {

enum class ObjectClass : std::uint8_t {
  kVehicle = 0,
  kPedestrian = 1,
  kCyclist = 2,
  kSign = 3,
  kOther = 4,
};

std::string_view to_string(ObjectClass cls);
std::optional<ObjectClass> parse_object_class(std::string_view name);

/// Oriented 3D box. `yaw` rotates about the world vertical (z) axis and is
/// kept in (-pi, pi].
struct Box3D {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double length = 1.0;  // along the heading
  double width = 1.0;
  double height = 1.0;
  double yaw = 0.0;
  ObjectClass cls = ObjectClass::kOther;
  int num_lidar_points = 0;

  /// Point expressed in the box frame (origin at the center, x along heading).
  Eigen::Vector3d to_local(const Eigen::Vector3d& p_world) const;
  bool contains(const Eigen::Vector3d& p_world) const;
  /// Distance of the box center from the camera origin.
  double range_m(const CameraCalib& calib) const;
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double rad);

/// Throws ConfigError for non-positive dimensions or non-finite fields.
void validate_box(const Box3D& box);

/// JSON list of {cx, cy, cz, length, width, height, yaw, class, num_lidar_points}.
std::vector<Box3D> boxes_from_json(const std::string& text);
std::string boxes_to_json(const std::vector<Box3D>& boxes);
std::vector<Box3D> load_boxes(const std::filesystem::path& path);

}  // namespace stixel
