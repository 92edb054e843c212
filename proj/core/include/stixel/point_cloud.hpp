#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace stixel {

/// LiDAR points in the world frame (z up). `labels` is either empty or holds
/// one semantic class id per point.
struct PointCloud {
  std::vector<Eigen::Vector3d> points;
  std::vector<std::uint8_t> labels;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_labels() const { return !labels.empty(); }
};

/// Binary layout, little-endian: "PCL1", u32 count, u32 flags, count x 3 x f32
/// (x, y, z), then count x u8 labels when flag bit 0 is set.
inline constexpr std::uint32_t kPointCloudHasLabels = 1u;

PointCloud decode_point_cloud(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_point_cloud(const PointCloud& cloud);

/// One point per line: x,y,z[,label]. Blank lines and '#' comments are skipped.
PointCloud parse_point_cloud_csv(const std::string& text);

/// Picks the CSV reader for *.csv and the binary reader otherwise.
PointCloud load_point_cloud(const std::filesystem::path& path);

}  // namespace stixel
