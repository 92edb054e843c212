#include "stixel/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stixel/errors.hpp"

namespace stixel {

namespace {

void check_fit(const PredictionTensor& tensor, const CameraCalib& calib,
               const DepthGrid& grid, int width_px) {
  if (tensor.depth_bins() != grid.n_bins()) {
    throw ConfigError("tensor has " + std::to_string(tensor.depth_bins()) +
                      " depth bins, grid has " + std::to_string(grid.n_bins()));
  }
  if (width_px <= 0) throw ConfigError("stixel width must be positive");
  if (static_cast<long>(tensor.columns()) * width_px > calib.image().width) {
    throw ConfigError("tensor columns times stixel width exceed image width");
  }
  if (tensor.image() != calib.image()) {
    throw ConfigError("tensor image size differs from calibration");
  }
}

}  // namespace

DecodeResult decode(const PredictionTensor& tensor, const CameraCalib& calib,
                    const DepthGrid& grid, double threshold, int width_px) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("threshold must lie in [0, 1]");
  }
  check_fit(tensor, calib, grid, width_px);

  DecodeResult result{make_world(calib, grid), 0};
  const double height = calib.image().height;
  const auto top = tensor.plane(Channel::kTop);
  const auto bot = tensor.plane(Channel::kBottom);
  const auto prob = tensor.plane(Channel::kProb);
  const int columns = tensor.columns();
  result.world.stixels.reserve(static_cast<std::size_t>(
      std::count_if(prob.begin(), prob.end(), [&](float p) { return p > threshold; })));

  for (std::size_t i = 0; i < prob.size(); ++i) {
    const double p = prob[i];
    if (!(p > threshold)) continue;
    const int v_top = static_cast<int>(std::lround(top[i] * height));
    const int v_bot = static_cast<int>(std::lround(bot[i] * height));
    if (v_top >= v_bot) {
      ++result.degenerate;
      continue;
    }
    const int bin = static_cast<int>(i) / columns;
    Stixel s;
    s.col = static_cast<int>(i) % columns;
    s.v_top = std::clamp(v_top, 0, calib.image().height);
    s.v_bot = std::clamp(v_bot, 0, calib.image().height);
    s.depth = grid.bin_to_depth(bin);
    s.prob = std::min(p, 1.0);
    s.width_px = width_px;
    if (s.v_top >= s.v_bot) {
      ++result.degenerate;
      continue;
    }
    result.world.stixels.push_back(s);
  }
  return result;
}

std::vector<StixelWorld> sweep_thresholds(const PredictionTensor& tensor,
                                          const CameraCalib& calib, const DepthGrid& grid,
                                          std::span<const double> thresholds,
                                          int width_px) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw ConfigError("thresholds must be ascending");
  }
  std::vector<StixelWorld> worlds;
  worlds.reserve(thresholds.size());
  for (double t : thresholds) worlds.push_back(decode(tensor, calib, grid, t, width_px).world);
  return worlds;
}

std::vector<double> default_thresholds() {
  std::vector<double> t;
  for (int i = 1; i <= 9; ++i) t.push_back(i / 10.0);
  return t;
}

}  // namespace stixel
