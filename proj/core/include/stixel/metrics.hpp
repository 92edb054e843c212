#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stixel/box3d.hpp"
#include "stixel/camera.hpp"
#include "stixel/depth_grid.hpp"
#include "stixel/segmentation.hpp"
#include "stixel/stixel.hpp"
#include "stixel/tensor.hpp"

namespace stixel {

struct EvalConfig {
  double max_range_m = 75.0;
  /// Horizontal half-angle of the cone in which boxes are evaluated.
  double fov_deg = 25.2;
  /// Share of a Stixel's height that must lie inside a box to approve it.
  double inside_fraction = 0.5;
  int height_samples = 11;
  std::vector<double> thresholds = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
};

void validate(const EvalConfig& config);

/// Only vehicles, pedestrians and cyclists take part in the evaluation.
bool is_evaluated_class(ObjectClass cls);

/// Keeps evaluated-class boxes with at least one LiDAR point whose center is
/// within max_range_m of the camera origin and inside the horizontal FoV cone.
std::vector<Box3D> filter_relevant_boxes(std::span<const Box3D> boxes,
                                         const CameraCalib& calib,
                                         const EvalConfig& config);

/// Share of `samples` equally spaced points along the Stixel's 3D segment
/// (ends included) that fall inside the box.
double stixel_inside_fraction(const Stixel& stixel, const Box3D& box,
                              const CameraCalib& calib, int samples);

/// Counts are additive across frames.
struct FrameCounts {
  std::size_t approved = 0;
  std::size_t predicted = 0;
  std::size_t hit = 0;
  std::size_t relevant = 0;

  FrameCounts& operator+=(const FrameCounts& o) {
    approved += o.approved;
    predicted += o.predicted;
    hit += o.hit;
    relevant += o.relevant;
    return *this;
  }
  friend bool operator==(const FrameCounts&, const FrameCounts&) = default;
};

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  FrameCounts counts;
};

/// Precision and recall from counts. No boxes and no Stixels gives (1, 1);
/// no Stixels with boxes gives (1, 0); Stixels without boxes gives (0, 1).
PrecisionRecall ratios(const FrameCounts& counts);

/// Harmonic mean, 0 when both inputs are 0.
double f1_score(double precision, double recall);

/// A Stixel is approved when it lies inside_fraction or more inside some
/// relevant box; a relevant box is hit when it approves at least one Stixel.
PrecisionRecall precision_recall(const StixelWorld& world, std::span<const Box3D> boxes,
                                 const CameraCalib& calib, const EvalConfig& config);

/// Either a raw tensor, decoded per threshold, or an already decoded world
/// whose Stixels are filtered by prob > threshold.
using Prediction = std::variant<PredictionTensor, StixelWorld>;

struct ThresholdRow {
  double threshold = 0.0;
  double precision = 0.0;  // micro: pooled counts over frames
  double recall = 0.0;
  double f1 = 0.0;
  double macro_precision = 0.0;  // mean of per-frame ratios
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  FrameCounts counts;
  std::optional<double> mean_iou;  // over frames with a defined IoU
};

struct FrameResult {
  std::string frame_id;
  std::vector<FrameCounts> counts;  // one per threshold
  std::vector<std::optional<double>> iou;
};

struct EvalReport {
  std::vector<ThresholdRow> rows;
  double average_f1 = 0.0;
  double average_macro_f1 = 0.0;
  std::vector<FrameResult> frames;
};

struct SegmentationInputs {
  std::map<std::string, LabelImage> masks;
  ClassMap classmap;
};

/// Evaluates every frame at every threshold of `config`. Prediction and
/// annotation frame ids must match exactly (AlignmentError otherwise). Frames
/// without a mask simply carry no IoU. `jobs` > 1 evaluates frames in parallel;
/// the report does not depend on it.
EvalReport f1_sweep(const std::map<std::string, Prediction>& predictions,
                    const std::map<std::string, std::vector<Box3D>>& annotations,
                    const CameraCalib& calib, const DepthGrid& grid,
                    const EvalConfig& config,
                    const SegmentationInputs* segmentation = nullptr, int jobs = 1);

std::string report_to_json(const EvalReport& report);
/// threshold,precision,recall,f1 rows.
std::string report_to_csv(const EvalReport& report);
/// Minimal static PR-curve plot.
std::string report_to_svg(const EvalReport& report);

}  // namespace stixel
