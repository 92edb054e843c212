#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stixel/camera.hpp"
#include "stixel/stixel.hpp"

namespace stixel::wire {

/// Compact frame, little-endian throughout.
///
///   header (24 bytes): "STX1", u8 version = 1, u16 n_bins, f32 d_min,
///                      f32 d_max, u8 grid kind, u16 img_width,
///                      u16 img_height, u32 count
///   per Stixel (9 bytes): u8 col, u16 v_top, u16 v_bot, u16 depth_q,
///                         u8 prob_q, u8 label (255 = none)
///
/// depth_q splits [d_min, d_max] into 65536 equal cells and decodes to the
/// cell center, so depth error is at most (d_max - d_min) / 2^17. prob_q is
/// round(prob * 255). Frame size is 24 + 9 * count bytes.
inline constexpr std::size_t kHeaderBytes = 24;
inline constexpr std::size_t kStixelBytes = 9;
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::uint8_t kNoLabel = 255;

inline constexpr std::size_t encoded_size(std::size_t count) {
  return kHeaderBytes + kStixelBytes * count;
}

std::uint16_t quantize_depth(double depth, double d_min, double d_max);
double dequantize_depth(std::uint16_t q, double d_min, double d_max);
std::uint8_t quantize_prob(double prob);
double dequantize_prob(std::uint8_t q);

/// Throws CapacityError when a field does not fit (col > 255, rows or image
/// size > 65535, label 255, count >= 2^32) and ConfigError for depths or
/// probabilities outside their ranges.
std::vector<std::uint8_t> encode(const StixelWorld& world);

/// Inverse of encode up to quantization. The wire frame carries neither
/// calibration nor frame id; a tangential grid is rebuilt with the default
/// tangent factor. Every Stixel is 8 px wide. Throws FormatError naming the
/// byte offset on malformed input.
StixelWorld decode(std::span<const std::uint8_t> bytes);

/// Lossless, schema-versioned JSON. from_json errors name the JSON path.
std::string to_json(const StixelWorld& world);
StixelWorld from_json(const std::string& text);

/// Picks JSON for *.json and the compact frame otherwise.
StixelWorld load_world(const std::filesystem::path& path);
void save_world(const std::filesystem::path& path, const StixelWorld& world);

}  // namespace stixel::wire
