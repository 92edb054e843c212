#include "stixel/box3d.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "stixel/errors.hpp"
#include "stixel/io.hpp"

namespace stixel {

namespace {

constexpr std::string_view kClassNames[] = {"vehicle", "pedestrian", "cyclist", "sign",
                                            "other"};

}  // namespace

std::string_view to_string(ObjectClass cls) {
  return kClassNames[static_cast<std::size_t>(cls)];
}

std::optional<ObjectClass> parse_object_class(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kClassNames); ++i) {
    if (kClassNames[i] == name) return static_cast<ObjectClass>(i);
  }
  return std::nullopt;
}

double wrap_angle(double rad) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(rad, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  if (r > std::numbers::pi) r -= two_pi;
  return r;
}

Eigen::Vector3d Box3D::to_local(const Eigen::Vector3d& p_world) const {
  const Eigen::Vector3d d = p_world - center;
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  return {c * d.x() + s * d.y(), -s * d.x() + c * d.y(), d.z()};
}

bool Box3D::contains(const Eigen::Vector3d& p_world) const {
  const Eigen::Vector3d p = to_local(p_world);
  return std::abs(p.x()) <= 0.5 * length && std::abs(p.y()) <= 0.5 * width &&
         std::abs(p.z()) <= 0.5 * height;
}

double Box3D::range_m(const CameraCalib& calib) const {
  return (center - calib.translation()).norm();
}

void validate_box(const Box3D& box) {
  if (!box.center.allFinite() || !std::isfinite(box.yaw)) {
    throw ConfigError("box fields must be finite");
  }
  if (!(box.length > 0.0) || !(box.width > 0.0) || !(box.height > 0.0)) {
    throw ConfigError("box dimensions must be positive");
  }
  if (box.num_lidar_points < 0) {
    throw ConfigError("box lidar point count must be non-negative");
  }
}

std::vector<Box3D> boxes_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("boxes: invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw FormatError("boxes: top level must be a list");

  std::vector<Box3D> boxes;
  boxes.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    const std::string where = "boxes[" + std::to_string(i) + "]";
    auto number = [&](const char* key) {
      if (!e.contains(key) || !e[key].is_number()) {
        throw FormatError(where + "." + key + ": expected a number");
      }
      return e[key].get<double>();
    };
    Box3D box;
    box.center = {number("cx"), number("cy"), number("cz")};
    box.length = number("length");
    box.width = number("width");
    box.height = number("height");
    box.yaw = wrap_angle(number("yaw"));
    if (!e.contains("class") || !e["class"].is_string()) {
      throw FormatError(where + ".class: expected a string");
    }
    const auto cls = parse_object_class(e["class"].get<std::string>());
    if (!cls) throw FormatError(where + ".class: unknown class");
    box.cls = *cls;
    if (!e.contains("num_lidar_points") || !e["num_lidar_points"].is_number_integer()) {
      throw FormatError(where + ".num_lidar_points: expected an integer");
    }
    box.num_lidar_points = e["num_lidar_points"].get<int>();
    try {
      validate_box(box);
    } catch (const ConfigError& err) {
      throw FormatError(where + ": " + err.what());
    }
    boxes.push_back(box);
  }
  return boxes;
}

std::string boxes_to_json(const std::vector<Box3D>& boxes) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& b : boxes) {
    j.push_back({{"cx", b.center.x()},
                 {"cy", b.center.y()},
                 {"cz", b.center.z()},
                 {"length", b.length},
                 {"width", b.width},
                 {"height", b.height},
                 {"yaw", b.yaw},
                 {"class", std::string(to_string(b.cls))},
                 {"num_lidar_points", b.num_lidar_points}});
  }
  return j.dump(2);
}

std::vector<Box3D> load_boxes(const std::filesystem::path& path) {
  return boxes_from_json(read_text(path));
}

}  // namespace stixel
