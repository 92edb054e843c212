#include "stixel/point_cloud.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "stixel/detail/binary_io.hpp"
#include "stixel/errors.hpp"
#include "stixel/io.hpp"

namespace stixel {

PointCloud decode_point_cloud(std::span<const std::uint8_t> bytes) {
  detail::ByteReader in(bytes, "point cloud");
  in.expect_magic("PCL1");
  const auto count = in.get<std::uint32_t>("point count");
  const std::size_t flags_at = in.offset();
  const auto flags = in.get<std::uint32_t>("flags");
  if ((flags & ~kPointCloudHasLabels) != 0) in.fail("unknown flag bits", flags_at);

  PointCloud cloud;
  in.need(std::size_t{count} * 12, "point payload");
  cloud.points.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::size_t at = in.offset();
    const double x = in.get<float>("x");
    const double y = in.get<float>("y");
    const double z = in.get<float>("z");
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
      in.fail("non-finite coordinate", at);
    }
    cloud.points.emplace_back(x, y, z);
  }
  if (flags & kPointCloudHasLabels) {
    in.need(count, "labels");
    cloud.labels.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      cloud.labels.push_back(in.get<std::uint8_t>("label"));
    }
  }
  if (in.remaining() != 0) in.fail("trailing bytes", in.offset());
  return cloud;
}

std::vector<std::uint8_t> encode_point_cloud(const PointCloud& cloud) {
  if (cloud.has_labels() && cloud.labels.size() != cloud.points.size()) {
    throw ConfigError("point cloud label count differs from point count");
  }
  detail::ByteWriter out;
  out.magic("PCL1");
  out.put(static_cast<std::uint32_t>(cloud.size()));
  out.put(cloud.has_labels() ? kPointCloudHasLabels : 0u);
  for (const auto& p : cloud.points) {
    out.put(static_cast<float>(p.x()));
    out.put(static_cast<float>(p.y()));
    out.put(static_cast<float>(p.z()));
  }
  for (auto label : cloud.labels) out.put(label);
  return out.release();
}

PointCloud parse_point_cloud_csv(const std::string& text) {
  PointCloud cloud;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool labelled = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    std::vector<double> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      const auto end = std::min(line.find(',', start), line.size());
      std::string_view token(line.data() + start, end - start);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
        throw FormatError("point cloud CSV line " + std::to_string(line_no) +
                          ": bad number '" + std::string(token) + "'");
      }
      fields.push_back(value);
      start = end + 1;
    }
    if (fields.size() != 3 && fields.size() != 4) {
      throw FormatError("point cloud CSV line " + std::to_string(line_no) +
                        ": expected 3 or 4 fields");
    }
    const bool has_label = fields.size() == 4;
    if (cloud.points.empty()) {
      labelled = has_label;
    } else if (has_label != labelled) {
      throw FormatError("point cloud CSV line " + std::to_string(line_no) +
                        ": label column present on some lines only");
    }
    cloud.points.emplace_back(fields[0], fields[1], fields[2]);
    if (has_label) {
      if (fields[3] < 0 || fields[3] > 255 || fields[3] != std::floor(fields[3])) {
        throw FormatError("point cloud CSV line " + std::to_string(line_no) +
                          ": label must be an integer in [0, 255]");
      }
      cloud.labels.push_back(static_cast<std::uint8_t>(fields[3]));
    }
  }
  return cloud;
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
  if (path.extension() == ".csv") return parse_point_cloud_csv(read_text(path));
  return decode_point_cloud(read_bytes(path));
}

}  // namespace stixel
