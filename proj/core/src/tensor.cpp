#include "stixel/tensor.hpp"

#include <limits>
#include <string>

#include "stixel/detail/binary_io.hpp"
#include "stixel/errors.hpp"
#include "stixel/io.hpp"

namespace stixel {

namespace {

void check_shape(int depth_bins, int columns, ImageSize image) {
  if (depth_bins <= 0 || columns <= 0) {
    throw ConfigError("tensor needs at least one depth bin and one column");
  }
  if (depth_bins > std::numeric_limits<std::uint16_t>::max() ||
      columns > std::numeric_limits<std::uint16_t>::max()) {
    throw ConfigError("tensor dimensions exceed 16 bits");
  }
  if (image.width <= 0 || image.height <= 0) {
    throw ConfigError("tensor image size must be positive");
  }
}

std::size_t element_count(int depth_bins, int columns) {
  return std::size_t{kTensorChannels} * static_cast<std::size_t>(depth_bins) *
         static_cast<std::size_t>(columns);
}

}  // namespace

PredictionTensor::PredictionTensor(int depth_bins, int columns, ImageSize image)
    : PredictionTensor(depth_bins, columns, image,
                       std::vector<float>(element_count(std::max(depth_bins, 0),
                                                        std::max(columns, 0)))) {}

PredictionTensor::PredictionTensor(int depth_bins, int columns, ImageSize image,
                                   std::vector<float> data)
    : depth_bins_(depth_bins), columns_(columns), image_(image), data_(std::move(data)) {
  check_shape(depth_bins, columns, image);
  if (data_.size() != element_count(depth_bins, columns)) {
    throw ConfigError("tensor payload size does not match its shape");
  }
}

std::span<const float> PredictionTensor::plane(Channel ch) const {
  const std::size_t n = static_cast<std::size_t>(depth_bins_) * static_cast<std::size_t>(columns_);
  return std::span<const float>(data_).subspan(static_cast<std::size_t>(ch) * n, n);
}

PredictionTensor decode_tensor(std::span<const std::uint8_t> bytes) {
  detail::ByteReader in(bytes, "tensor");
  in.expect_magic("SNXT");
  const std::size_t version_at = in.offset();
  if (const auto version = in.get<std::uint8_t>("version"); version != kTensorVersion) {
    in.fail("unsupported version " + std::to_string(version), version_at);
  }
  const std::size_t p_at = in.offset();
  if (const auto p = in.get<std::uint16_t>("property count P"); p != kTensorChannels) {
    in.fail("property count P must be 3 (v_top, v_bot, prob), got " + std::to_string(p),
            p_at);
  }
  const std::size_t d_at = in.offset();
  const auto d = in.get<std::uint16_t>("depth bins D");
  if (d == 0) in.fail("depth bins D must be positive", d_at);
  const std::size_t c_at = in.offset();
  const auto c = in.get<std::uint16_t>("columns C");
  if (c == 0) in.fail("columns C must be positive", c_at);
  const std::size_t w_at = in.offset();
  const auto width = in.get<std::uint32_t>("img_width");
  const std::size_t h_at = in.offset();
  const auto height = in.get<std::uint32_t>("img_height");
  if (width == 0 || width > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    in.fail("img_width out of range", w_at);
  }
  if (height == 0 || height > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    in.fail("img_height out of range", h_at);
  }

  const std::size_t n = element_count(d, c);
  if (in.remaining() != n * sizeof(float)) {
    in.fail("payload holds " + std::to_string(in.remaining()) + " bytes, expected " +
                std::to_string(n * sizeof(float)) + " for shape (3, " +
                std::to_string(d) + ", " + std::to_string(c) + ")",
            in.offset());
  }
  std::vector<float> data(n);
  for (auto& v : data) v = in.get<float>("payload");
  return PredictionTensor(d, c, {static_cast<int>(width), static_cast<int>(height)},
                          std::move(data));
}

std::vector<std::uint8_t> encode_tensor(const PredictionTensor& tensor) {
  detail::ByteWriter out;
  out.magic("SNXT");
  out.put(kTensorVersion);
  out.put(static_cast<std::uint16_t>(kTensorChannels));
  out.put(static_cast<std::uint16_t>(tensor.depth_bins()));
  out.put(static_cast<std::uint16_t>(tensor.columns()));
  out.put(static_cast<std::uint32_t>(tensor.image().width));
  out.put(static_cast<std::uint32_t>(tensor.image().height));
  for (float v : tensor.data()) out.put(v);
  return out.release();
}

PredictionTensor load_tensor(const std::filesystem::path& path) {
  return decode_tensor(read_bytes(path));
}

}  // namespace stixel
