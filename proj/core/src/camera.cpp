#include "stixel/camera.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "stixel/errors.hpp"
#include "stixel/io.hpp"

namespace stixel {

namespace {

constexpr double kOrthoTol = 1e-9;

}  // namespace

CameraCalib::CameraCalib(double fx, double fy, double cx, double cy,
                         ImageSize image, const Eigen::Matrix3d& rotation,
                         const Eigen::Vector3d& translation)
    : fx_(fx),
      fy_(fy),
      cx_(cx),
      cy_(cy),
      image_(image),
      rotation_(rotation),
      translation_(translation) {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw ConfigError("camera focal lengths must be positive");
  }
  if (image.width <= 0 || image.height <= 0) {
    throw ConfigError("camera image size must be positive");
  }
  if (!std::isfinite(cx) || !std::isfinite(cy) || !rotation.allFinite() ||
      !translation.allFinite()) {
    throw ConfigError("camera parameters must be finite");
  }
  const double ortho_err =
      (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
          .cwiseAbs()
          .maxCoeff();
  if (ortho_err >= kOrthoTol || std::abs(rotation.determinant() - 1.0) > kOrthoTol) {
    throw ConfigError("camera rotation is not a proper orthonormal matrix");
  }
}

Eigen::Matrix3d CameraCalib::intrinsics() const {
  Eigen::Matrix3d k;
  k << fx_, 0.0, cx_, 0.0, fy_, cy_, 0.0, 0.0, 1.0;
  return k;
}

Eigen::Vector3d CameraCalib::world_to_camera(const Eigen::Vector3d& p_world) const {
  return rotation_.transpose() * (p_world - translation_);
}

Eigen::Vector3d CameraCalib::camera_to_world(const Eigen::Vector3d& p_cam) const {
  return rotation_ * p_cam + translation_;
}

ImagePoint project_point(const CameraCalib& calib, const Eigen::Vector3d& p_world) {
  const Eigen::Vector3d p = calib.world_to_camera(p_world);
  if (!(p.z() > 0.0)) {
    throw GeometryError("point lies behind the camera (z = " +
                        std::to_string(p.z()) + ")");
  }
  return {calib.fx() * p.x() / p.z() + calib.cx(),
          calib.fy() * p.y() / p.z() + calib.cy(), p.z()};
}

Eigen::Vector3d backproject_point(const CameraCalib& calib, double u, double v,
                                  double w) {
  if (!(w > 0.0)) {
    throw RangeError("backprojection depth must be positive (w = " +
                     std::to_string(w) + ")");
  }
  // K^-1 applied to (u*w, v*w, w), written out to avoid the matrix inverse.
  const Eigen::Vector3d p_cam((u - calib.cx()) * w / calib.fx(),
                              (v - calib.cy()) * w / calib.fy(), w);
  return calib.camera_to_world(p_cam);
}

CameraCalib calib_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("calibration: invalid JSON: ") + e.what());
  }
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw FormatError(std::string("calibration: missing or non-numeric '") +
                        key + "'");
    }
    return j[key].get<double>();
  };
  auto integer = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
      throw FormatError(std::string("calibration: missing or non-integer '") +
                        key + "'");
    }
    return j[key].get<int>();
  };

  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  if (j.contains("R")) {
    const auto& r = j["R"];
    if (!r.is_array() || r.size() != 9) {
      throw FormatError("calibration: 'R' must hold 9 numbers");
    }
    for (int i = 0; i < 9; ++i) {
      if (!r[i].is_number()) throw FormatError("calibration: 'R' must hold 9 numbers");
      rotation(i / 3, i % 3) = r[i].get<double>();
    }
  }
  if (j.contains("t")) {
    const auto& t = j["t"];
    if (!t.is_array() || t.size() != 3) {
      throw FormatError("calibration: 't' must hold 3 numbers");
    }
    for (int i = 0; i < 3; ++i) {
      if (!t[i].is_number()) throw FormatError("calibration: 't' must hold 3 numbers");
      translation(i) = t[i].get<double>();
    }
  }
  return CameraCalib(number("fx"), number("fy"), number("cx"), number("cy"),
                     {integer("width"), integer("height")}, rotation,
                     translation);
}

std::string calib_to_json(const CameraCalib& calib) {
  nlohmann::json j;
  j["fx"] = calib.fx();
  j["fy"] = calib.fy();
  j["cx"] = calib.cx();
  j["cy"] = calib.cy();
  std::vector<double> r(9);
  for (int i = 0; i < 9; ++i) r[i] = calib.rotation()(i / 3, i % 3);
  j["R"] = r;
  j["t"] = {calib.translation().x(), calib.translation().y(),
            calib.translation().z()};
  j["width"] = calib.image().width;
  j["height"] = calib.image().height;
  return j.dump(2);
}

CameraCalib load_calib(const std::filesystem::path& path) {
  return calib_from_json(read_text(path));
}

}  // namespace stixel
