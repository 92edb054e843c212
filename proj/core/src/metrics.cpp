#include "stixel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stixel/decoder.hpp"
#include "stixel/errors.hpp"

namespace stixel {

namespace {

bool in_fov(const Box3D& box, const CameraCalib& calib, double fov_deg) {
  const Eigen::Vector3d p = calib.world_to_camera(box.center);
  if (!(p.z() > 0.0)) return false;
  const double angle = std::atan2(std::abs(p.x()), p.z());
  return angle <= fov_deg * std::numbers::pi / 180.0;
}

StixelWorld filter_by_probability(const StixelWorld& world, double threshold) {
  StixelWorld out = world;
  std::erase_if(out.stixels, [&](const Stixel& s) { return !(s.prob > threshold); });
  return out;
}

FrameResult evaluate_frame(const std::string& id, const Prediction& prediction,
                           const std::vector<Box3D>& boxes, const CameraCalib& calib,
                           const DepthGrid& grid, const EvalConfig& config,
                           const SegmentationInputs* segmentation) {
  FrameResult result{id, {}, {}};
  const LabelImage* mask = nullptr;
  std::optional<CoverageGrid> truth;
  if (segmentation) {
    if (auto it = segmentation->masks.find(id); it != segmentation->masks.end()) {
      mask = &it->second;
      truth = interest_grid(*mask, segmentation->classmap);
    }
  }
  for (double t : config.thresholds) {
    const StixelWorld world =
        std::holds_alternative<PredictionTensor>(prediction)
            ? decode(std::get<PredictionTensor>(prediction), calib, grid, t).world
            : filter_by_probability(std::get<StixelWorld>(prediction), t);
    result.counts.push_back(precision_recall(world, boxes, calib, config).counts);
    if (truth) {
      if (world.image.width != mask->width || world.image.height != mask->height) {
        throw FormatError("mask of frame '" + id + "' differs from the image size");
      }
      result.iou.push_back(grid_iou(*truth, stixel_grid(world, truth->rows, truth->cols)));
    } else {
      result.iou.push_back(std::nullopt);
    }
  }
  return result;
}

}  // namespace

void validate(const EvalConfig& config) {
  if (!(config.inside_fraction > 0.0 && config.inside_fraction <= 1.0)) {
    throw ConfigError("inside fraction must lie in (0, 1]");
  }
  if (config.height_samples < 2) throw ConfigError("height samples must be at least 2");
  if (!(config.max_range_m > 0.0)) throw ConfigError("max range must be positive");
  if (!(config.fov_deg > 0.0 && config.fov_deg < 90.0)) {
    throw ConfigError("FoV half-angle must lie in (0, 90) degrees");
  }
  for (double t : config.thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("thresholds must lie in [0, 1]");
  }
  if (!std::is_sorted(config.thresholds.begin(), config.thresholds.end())) {
    throw ConfigError("thresholds must be ascending");
  }
}

bool is_evaluated_class(ObjectClass cls) {
  return cls == ObjectClass::kVehicle || cls == ObjectClass::kPedestrian ||
         cls == ObjectClass::kCyclist;
}

std::vector<Box3D> filter_relevant_boxes(std::span<const Box3D> boxes,
                                         const CameraCalib& calib,
                                         const EvalConfig& config) {
  std::vector<Box3D> out;
  for (const Box3D& box : boxes) {
    if (!is_evaluated_class(box.cls)) continue;
    if (box.num_lidar_points < 1) continue;
    if (box.range_m(calib) > config.max_range_m) continue;
    if (!in_fov(box, calib, config.fov_deg)) continue;
    out.push_back(box);
  }
  return out;
}

double stixel_inside_fraction(const Stixel& stixel, const Box3D& box,
                              const CameraCalib& calib, int samples) {
  if (samples < 2) throw ConfigError("need at least 2 height samples");
  if (!(stixel.depth > 0.0)) throw GeometryError("stixel depth must be positive");
  const Segment3D seg = stixel_to_segment3d(calib, stixel);
  int inside = 0;
  for (int k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    if (box.contains(seg.top + t * (seg.bot - seg.top))) ++inside;
  }
  return static_cast<double>(inside) / samples;
}

PrecisionRecall ratios(const FrameCounts& c) {
  PrecisionRecall pr{0.0, 0.0, c};
  if (c.predicted == 0 && c.relevant == 0) {
    pr.precision = 1.0;
    pr.recall = 1.0;
  } else if (c.predicted == 0) {
    pr.precision = 1.0;
    pr.recall = 0.0;
  } else if (c.relevant == 0) {
    pr.precision = 0.0;
    pr.recall = 1.0;
  } else {
    pr.precision = static_cast<double>(c.approved) / static_cast<double>(c.predicted);
    pr.recall = static_cast<double>(c.hit) / static_cast<double>(c.relevant);
  }
  return pr;
}

double f1_score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

PrecisionRecall precision_recall(const StixelWorld& world, std::span<const Box3D> boxes,
                                 const CameraCalib& calib, const EvalConfig& config) {
  validate(config);
  const std::vector<Box3D> relevant = filter_relevant_boxes(boxes, calib, config);
  std::vector<bool> hit(relevant.size(), false);
  FrameCounts c;
  c.predicted = world.stixels.size();
  c.relevant = relevant.size();
  for (const Stixel& s : world.stixels) {
    bool approved = false;
    for (std::size_t b = 0; b < relevant.size(); ++b) {
      if (stixel_inside_fraction(s, relevant[b], calib, config.height_samples) >=
          config.inside_fraction) {
        approved = true;
        hit[b] = true;
      }
    }
    if (approved) ++c.approved;
  }
  c.hit = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
  return ratios(c);
}

EvalReport f1_sweep(const std::map<std::string, Prediction>& predictions,
                    const std::map<std::string, std::vector<Box3D>>& annotations,
                    const CameraCalib& calib, const DepthGrid& grid,
                    const EvalConfig& config, const SegmentationInputs* segmentation,
                    int jobs) {
  validate(config);
  if (config.thresholds.empty()) throw ConfigError("no thresholds to evaluate");
  for (const auto& [id, _] : predictions) {
    if (!annotations.contains(id)) {
      throw AlignmentError("prediction frame '" + id + "' has no annotation");
    }
  }
  for (const auto& [id, _] : annotations) {
    if (!predictions.contains(id)) {
      throw AlignmentError("annotated frame '" + id + "' has no prediction");
    }
  }

  std::vector<const std::string*> ids;
  for (const auto& [id, _] : predictions) ids.push_back(&id);

  EvalReport report;
  report.frames.resize(ids.size());
  auto run = [&](std::size_t i) {
    const std::string& id = *ids[i];
    report.frames[i] = evaluate_frame(id, predictions.at(id), annotations.at(id), calib,
                                      grid, config, segmentation);
  };
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, ids.size() + 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < ids.size(); ++i) run(i);
  } else {
    std::vector<std::future<void>> tasks;
    for (std::size_t w = 0; w < workers; ++w) {
      tasks.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < ids.size(); i += workers) run(i);
      }));
    }
    for (auto& t : tasks) t.get();
  }

  const std::size_t n_frames = report.frames.size();
  for (std::size_t k = 0; k < config.thresholds.size(); ++k) {
    ThresholdRow row;
    row.threshold = config.thresholds[k];
    double iou_sum = 0.0;
    std::size_t iou_n = 0;
    for (const FrameResult& f : report.frames) {
      row.counts += f.counts[k];
      const PrecisionRecall pr = ratios(f.counts[k]);
      row.macro_precision += pr.precision;
      row.macro_recall += pr.recall;
      if (f.iou[k]) {
        iou_sum += *f.iou[k];
        ++iou_n;
      }
    }
    const PrecisionRecall pooled = ratios(row.counts);
    row.precision = pooled.precision;
    row.recall = pooled.recall;
    row.f1 = f1_score(row.precision, row.recall);
    if (n_frames > 0) {
      row.macro_precision /= static_cast<double>(n_frames);
      row.macro_recall /= static_cast<double>(n_frames);
    } else {
      row.macro_precision = pooled.precision;
      row.macro_recall = pooled.recall;
    }
    row.macro_f1 = f1_score(row.macro_precision, row.macro_recall);
    if (iou_n > 0) row.mean_iou = iou_sum / static_cast<double>(iou_n);
    report.average_f1 += row.f1;
    report.average_macro_f1 += row.macro_f1;
    report.rows.push_back(row);
  }
  report.average_f1 /= static_cast<double>(report.rows.size());
  report.average_macro_f1 /= static_cast<double>(report.rows.size());
  return report;
}

std::string report_to_json(const EvalReport& report) {
  using nlohmann::json;
  auto counts_json = [](const FrameCounts& c) {
    return json{{"approved", c.approved},
                {"predicted", c.predicted},
                {"hit", c.hit},
                {"relevant", c.relevant}};
  };
  auto optional_json = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  json j;
  j["average_f1"] = report.average_f1;
  j["average_macro_f1"] = report.average_macro_f1;
  j["thresholds"] = json::array();
  for (const auto& r : report.rows) {
    j["thresholds"].push_back({{"threshold", r.threshold},
                               {"precision", r.precision},
                               {"recall", r.recall},
                               {"f1", r.f1},
                               {"macro_precision", r.macro_precision},
                               {"macro_recall", r.macro_recall},
                               {"macro_f1", r.macro_f1},
                               {"counts", counts_json(r.counts)},
                               {"mean_iou", optional_json(r.mean_iou)}});
  }
  j["frames"] = json::array();
  for (const auto& f : report.frames) {
    json frame{{"frame_id", f.frame_id}, {"counts", json::array()}, {"iou", json::array()}};
    for (const auto& c : f.counts) frame["counts"].push_back(counts_json(c));
    for (const auto& v : f.iou) frame["iou"].push_back(optional_json(v));
    j["frames"].push_back(std::move(frame));
  }
  return j.dump(2);
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream os;
  os << "threshold,precision,recall,f1\n" << std::setprecision(6) << std::fixed;
  for (const auto& r : report.rows) {
    os << r.threshold << ',' << r.precision << ',' << r.recall << ',' << r.f1 << '\n';
  }
  return os.str();
}

std::string report_to_svg(const EvalReport& report) {
  constexpr double size = 400.0;
  constexpr double margin = 40.0;
  auto px = [&](double recall) { return margin + recall * size; };
  auto py = [&](double precision) { return margin + (1.0 - precision) * size; };
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin
     << "\" height=\"" << size + 2 * margin << "\">\n";
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size
     << "\" height=\"" << size << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << margin + size / 2 << "\" y=\"" << size + 1.8 * margin
     << "\" text-anchor=\"middle\">recall</text>\n";
  os << "<text x=\"12\" y=\"" << margin + size / 2
     << "\" transform=\"rotate(-90 12 " << margin + size / 2
     << ")\" text-anchor=\"middle\">precision</text>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (const auto& r : report.rows) os << px(r.recall) << ',' << py(r.precision) << ' ';
  os << "\"/>\n";
  for (const auto& r : report.rows) {
    os << "<circle cx=\"" << px(r.recall) << "\" cy=\"" << py(r.precision)
       << "\" r=\"3\" fill=\"steelblue\"><title>t=" << r.threshold << "</title></circle>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace stixel
