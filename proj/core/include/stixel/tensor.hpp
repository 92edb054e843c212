#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "stixel/camera.hpp"

namespace stixel {

/// Property planes of a prediction tensor, in file order.
enum class Channel : int { kTop = 0, kBottom = 1, kProb = 2 };

inline constexpr int kTensorChannels = 3;

/// Raw network output of shape [3, D, C]: per depth bin and column the
/// normalized top row, normalized bottom row and Stixel probability.
class PredictionTensor {
 public:
  PredictionTensor(int depth_bins, int columns, ImageSize image);
  PredictionTensor(int depth_bins, int columns, ImageSize image, std::vector<float> data);

  int depth_bins() const { return depth_bins_; }
  int columns() const { return columns_; }
  ImageSize image() const { return image_; }

  float at(Channel ch, int bin, int col) const { return data_[index(ch, bin, col)]; }
  float& at(Channel ch, int bin, int col) { return data_[index(ch, bin, col)]; }

  /// One channel as a contiguous [D, C] plane.
  std::span<const float> plane(Channel ch) const;
  std::span<const float> data() const { return data_; }

  friend bool operator==(const PredictionTensor&, const PredictionTensor&) = default;

 private:
  std::size_t index(Channel ch, int bin, int col) const {
    return (static_cast<std::size_t>(ch) * static_cast<std::size_t>(depth_bins_) +
            static_cast<std::size_t>(bin)) *
               static_cast<std::size_t>(columns_) +
           static_cast<std::size_t>(col);
  }

  int depth_bins_;
  int columns_;
  ImageSize image_;
  std::vector<float> data_;
};

/// "SNXT", u8 version = 1, u16 P = 3, u16 D, u16 C, u32 img_width,
/// u32 img_height, then P*D*C f32 in (p, d, c) row-major order.
inline constexpr std::uint8_t kTensorVersion = 1;
inline constexpr std::size_t kTensorHeaderBytes = 19;

PredictionTensor decode_tensor(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_tensor(const PredictionTensor& tensor);
PredictionTensor load_tensor(const std::filesystem::path& path);

}  // namespace stixel
