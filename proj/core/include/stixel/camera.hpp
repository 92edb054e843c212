#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Core>

namespace stixel {

struct ImageSize {
  int width = 0;
  int height = 0;

  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

/// Pinhole camera with rigid extrinsics.
///
/// `rotation` and `translation` map camera coordinates into the world frame:
/// p_world = R * p_cam + t. The camera frame is x right, y down, z along the
/// optical axis, so image rows grow downward.
class CameraCalib {
 public:
  /// Validates focal lengths, image size and orthonormality of `rotation`;
  /// throws ConfigError on violation.
  CameraCalib(double fx, double fy, double cx, double cy, ImageSize image,
              const Eigen::Matrix3d& rotation = Eigen::Matrix3d::Identity(),
              const Eigen::Vector3d& translation = Eigen::Vector3d::Zero());

  double fx() const { return fx_; }
  double fy() const { return fy_; }
  double cx() const { return cx_; }
  double cy() const { return cy_; }
  ImageSize image() const { return image_; }
  const Eigen::Matrix3d& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }

  Eigen::Matrix3d intrinsics() const;

  Eigen::Vector3d world_to_camera(const Eigen::Vector3d& p_world) const;
  Eigen::Vector3d camera_to_world(const Eigen::Vector3d& p_cam) const;

  friend bool operator==(const CameraCalib&, const CameraCalib&) = default;

 private:
  double fx_, fy_, cx_, cy_;
  ImageSize image_;
  Eigen::Matrix3d rotation_;
  Eigen::Vector3d translation_;
};

/// Image coordinates (u, v) in pixels and depth w along the optical axis.
struct ImagePoint {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
};

/// Throws GeometryError when the point is not strictly in front of the camera.
ImagePoint project_point(const CameraCalib& calib, const Eigen::Vector3d& p_world);

/// Exact inverse of project_point. Throws RangeError for w <= 0.
Eigen::Vector3d backproject_point(const CameraCalib& calib, double u, double v,
                                  double w);

/// Calibration JSON: fx, fy, cx, cy, R (9 numbers, row-major), t (3 numbers),
/// width, height. R and t default to identity and zero.
CameraCalib calib_from_json(const std::string& text);
std::string calib_to_json(const CameraCalib& calib);
CameraCalib load_calib(const std::filesystem::path& path);

}  // namespace stixel
