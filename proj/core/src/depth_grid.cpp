#include "stixel/depth_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stixel/errors.hpp"

namespace stixel {

namespace {

constexpr double kMaxTangentialA = 64.0;

void check_range(int n_bins, double d_min, double d_max) {
  if (n_bins < 2) throw ConfigError("depth grid needs at least 2 bins");
  if (!(d_min >= 0.0) || !(d_min < d_max) || !std::isfinite(d_max)) {
    throw ConfigError("depth grid needs 0 <= d_min < d_max");
  }
}

std::vector<double> tangential_anchors(int n, double d_min, double d_max, double a) {
  const double limit = std::numbers::pi / a;
  const double denom = std::tan(limit);
  std::vector<double> anchors(static_cast<std::size_t>(n));
  anchors.front() = d_min;
  anchors.back() = d_max;
  for (int i = 1; i < n - 1; ++i) {
    const double ratio = std::tan(static_cast<double>(i) / (n - 1) * limit) / denom;
    anchors[static_cast<std::size_t>(i)] = d_min + ratio * (d_max - d_min);
  }
  return anchors;
}

int count_at_most(std::span<const double> anchors, double depth) {
  return static_cast<int>(std::upper_bound(anchors.begin(), anchors.end(), depth) -
                          anchors.begin());
}

}  // namespace

DepthGrid DepthGrid::linear(int n_bins, double d_min, double d_max) {
  check_range(n_bins, d_min, d_max);
  const double step = (d_max - d_min) / n_bins;
  std::vector<double> anchors(static_cast<std::size_t>(n_bins));
  for (int i = 0; i < n_bins; ++i) anchors[static_cast<std::size_t>(i)] = d_min + i * step;
  return DepthGrid(GridKind::kLinear, d_min, d_max, 0.0, std::move(anchors));
}

DepthGrid DepthGrid::tangential(int n_bins, double d_min, double d_max, double a) {
  check_range(n_bins, d_min, d_max);
  if (!(a > 2.0) || !std::isfinite(a)) {
    throw DomainError("tangent factor a must exceed 2 (got " + std::to_string(a) + ")");
  }
  return DepthGrid(GridKind::kTangential, d_min, d_max, a,
                   tangential_anchors(n_bins, d_min, d_max, a));
}

int DepthGrid::depth_to_bin(double depth) const {
  if (!contains(depth)) {
    throw RangeError("depth " + std::to_string(depth) + " m outside [" +
                     std::to_string(d_min_) + ", " + std::to_string(d_max_) + "]");
  }
  return count_at_most(anchors_, depth) - 1;
}

double DepthGrid::bin_to_depth(int bin) const {
  if (bin < 0 || bin >= n_bins()) {
    throw RangeError("depth bin " + std::to_string(bin) + " out of range");
  }
  return anchors_[static_cast<std::size_t>(bin)];
}

int count_anchors_at_most(const DepthGrid& grid, double depth) {
  return count_at_most(grid.anchors(), depth);
}

double calibrate_tangential_a(int n_bins, double d_min, double d_max,
                              int target_count, double target_depth) {
  check_range(n_bins, d_min, d_max);
  if (target_count <= 0 || target_count >= n_bins) {
    throw CalibrationError("target count " + std::to_string(target_count) +
                           " must lie strictly between 0 and " + std::to_string(n_bins));
  }
  if (!(target_depth > d_min) || !(target_depth < d_max)) {
    throw CalibrationError("target depth must lie strictly inside (d_min, d_max)");
  }

  auto count = [&](double a) {
    return count_at_most(tangential_anchors(n_bins, d_min, d_max, a), target_depth);
  };

  // Smaller a bends the curve harder and packs more anchors near d_min.
  double lo = std::nextafter(2.0, 3.0);
  double hi = kMaxTangentialA;
  const int count_lo = count(lo);
  const int count_hi = count(hi);
  if (target_count > count_lo || target_count < count_hi) {
    throw CalibrationError("no a in (2, 64] yields " + std::to_string(target_count) +
                           " anchors <= " + std::to_string(target_depth) +
                           " m; achievable counts range from " +
                           std::to_string(count_hi) + " (a = 64) to " +
                           std::to_string(count_lo) + " (a -> 2)");
  }
  if (count_lo == target_count) return lo;

  // Invariant: count(lo) > target_count >= count(hi).
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count(mid) > target_count) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (count(hi) != target_count) {
    throw CalibrationError("anchor count jumps past " + std::to_string(target_count) +
                           " at a = " + std::to_string(hi) +
                           "; achievable counts range from " + std::to_string(count_hi) +
                           " to " + std::to_string(count_lo));
  }
  return hi;
}

}  // namespace stixel
