#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stixel/stixel.hpp"

namespace stixel {

/// Evaluation groups of the fine segmentation vocabulary.
enum class EvalGroup : std::uint8_t { kNotUsed = 0, kVehicle, kPedestrian, kCyclist };

/// Group of a fine class name: vehicle <- ego-vehicle, car, truck, bus, other
/// large vehicle, trailer; pedestrian <- pedestrian, pedestrian object;
/// cyclist <- bicycle, motorcycle, cyclist, motorcyclist; anything else is
/// not used. Case, '-' and '_' are ignored.
EvalGroup group_of_class_name(std::string_view name);

/// Maps label bytes of a mask to evaluation groups. Labels not declared in the
/// vocabulary are not used.
class ClassMap {
 public:
  ClassMap() = default;
  explicit ClassMap(const std::map<std::uint8_t, std::string>& vocabulary);

  /// Sidecar JSON: object mapping label ids (as strings) to class names.
  static ClassMap from_json(const std::string& text);

  EvalGroup group(std::uint8_t label) const { return groups_[label]; }
  bool is_interest(std::uint8_t label) const { return group(label) != EvalGroup::kNotUsed; }

 private:
  std::vector<EvalGroup> groups_ = std::vector<EvalGroup>(256, EvalGroup::kNotUsed);
};

/// Full-resolution label image, one byte per pixel, row-major.
struct LabelImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(col)];
  }
};

/// Binary 8-bit PGM (P5) with maxval <= 255.
LabelImage decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const LabelImage& image);
LabelImage load_pgm(const std::filesystem::path& path);

/// Binary occupancy grid on the Stixel raster.
struct CoverageGrid {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> cells;

  bool at(int r, int c) const {
    return cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                 static_cast<std::size_t>(c)] != 0;
  }
  std::size_t count() const;
};

/// Samples every `stride`-th pixel in both axes and keeps interest labels.
/// Throws FormatError when the mask is not divisible into the grid.
CoverageGrid interest_grid(const LabelImage& mask, const ClassMap& classmap,
                           int stride = kDefaultStixelWidth);

/// Paints every Stixel from top to bottom: cell row r is covered when its
/// sampled pixel row r * stride lies in [v_top, v_bot).
CoverageGrid stixel_grid(const StixelWorld& world, int rows, int cols,
                         int stride = kDefaultStixelWidth);

/// Jaccard index; nullopt when both grids are empty.
std::optional<double> grid_iou(const CoverageGrid& a, const CoverageGrid& b);

std::optional<double> seg_iou(const StixelWorld& world, const LabelImage& mask,
                              const ClassMap& classmap);

}  // namespace stixel
