#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stixel {

enum class GridKind : unsigned char { kLinear = 0, kTangential = 1 };

/// Tangent limiting factor for which exactly 43 of 64 anchors over [4, 66] m
/// lie at or below 30 m. Midpoint of the interval of such factors, bounded by
/// calibrate_tangential_a(64, 4, 66, 43, 30) and (..., 42, 30), so anchor 42
/// sits at 29.53 m and anchor 43 at 30.50 m.
inline constexpr double kDefaultTangentialA = 2.6576925803804321;

/// Discrete set of metric depth candidates ("anchors"), ascending.
///
/// Linear grids use lower bin edges: anchors[i] = d_min + i * (d_max - d_min) / n.
/// Tangential grids follow
///   D(i) = d_min + tan(i / (n - 1) * pi / a) / tan(pi / a) * (d_max - d_min),
/// which hits both range ends exactly and widens the step with depth.
class DepthGrid {
 public:
  static DepthGrid linear(int n_bins = 64, double d_min = 4.0, double d_max = 66.0);
  static DepthGrid tangential(int n_bins = 64, double d_min = 4.0,
                              double d_max = 66.0, double a = kDefaultTangentialA);

  GridKind kind() const { return kind_; }
  int n_bins() const { return static_cast<int>(anchors_.size()); }
  double d_min() const { return d_min_; }
  double d_max() const { return d_max_; }
  /// Only meaningful for tangential grids; 0 for linear ones.
  double a() const { return a_; }
  std::span<const double> anchors() const { return anchors_; }

  /// Index of the largest anchor not exceeding `depth`. Throws RangeError
  /// outside [d_min, d_max].
  int depth_to_bin(double depth) const;
  double bin_to_depth(int bin) const;

  bool contains(double depth) const { return depth >= d_min_ && depth <= d_max_; }

  friend bool operator==(const DepthGrid&, const DepthGrid&) = default;

 private:
  DepthGrid(GridKind kind, double d_min, double d_max, double a,
            std::vector<double> anchors)
      : kind_(kind), d_min_(d_min), d_max_(d_max), a_(a), anchors_(std::move(anchors)) {}

  GridKind kind_;
  double d_min_;
  double d_max_;
  double a_;
  std::vector<double> anchors_;
};

/// Number of anchors of `grid` that are <= `depth`.
int count_anchors_at_most(const DepthGrid& grid, double depth);

/// Smallest tangent factor a in (2, 64] for which exactly `target_count`
/// anchors lie at or below `target_depth`. The count is non-increasing in a,
/// so the answer is found by bisection on the count boundary. Throws
/// CalibrationError when the count is unreachable.
double calibrate_tangential_a(int n_bins, double d_min, double d_max,
                              int target_count, double target_depth);

}  // namespace stixel
