#include "stixel/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "stixel/errors.hpp"

namespace stixel::loss {

namespace {

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ShapeError(std::string(what) + ": length mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
  if (a == 0) throw ShapeError(std::string(what) + ": empty input");
}

double log_likelihood(double p, double t) {
  const double q = std::clamp(p, kProbEpsilon, 1.0 - kProbEpsilon);
  return t * std::log(q) + (1.0 - t) * std::log(1.0 - q);
}

}  // namespace

void validate(const LossWeights& w) {
  if (!(w.alpha >= 0.0) || !(w.beta >= 0.0) || !(w.gamma >= 0.0)) {
    throw ConfigError("loss term weights must be non-negative");
  }
  if (!(w.alpha_min <= w.alpha_max)) throw ConfigError("alpha_min must not exceed alpha_max");
  if (!(w.d_min < w.d_max)) throw ConfigError("d_min must be below d_max");
}

double mse(std::span<const double> pred, std::span<const double> target) {
  check_lengths(pred.size(), target.size(), "mse");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    sum += d * d;
  }
  return sum / static_cast<double>(pred.size());
}

double bce(std::span<const double> pred_prob, std::span<const double> target) {
  check_lengths(pred_prob.size(), target.size(), "bce");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred_prob.size(); ++i) {
    sum += log_likelihood(pred_prob[i], target[i]);
  }
  return -sum / static_cast<double>(pred_prob.size());
}

double depth_weight(double depth, const LossWeights& w) {
  if (!(depth >= w.d_min && depth <= w.d_max)) {
    throw RangeError("depth " + std::to_string(depth) + " outside the weighting range");
  }
  return w.alpha_min + (depth - w.d_min) / (w.d_max - w.d_min) * (w.alpha_max - w.alpha_min);
}

double wbce(std::span<const double> pred_prob, std::span<const double> target,
            std::span<const double> depths, const LossWeights& weights) {
  check_lengths(pred_prob.size(), target.size(), "wbce");
  check_lengths(pred_prob.size(), depths.size(), "wbce");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred_prob.size(); ++i) {
    sum += depth_weight(depths[i], weights) * log_likelihood(pred_prob[i], target[i]);
  }
  return -sum / static_cast<double>(pred_prob.size());
}

namespace {

double total_loss_impl(const PredictionTensor& pred, const PredictionTensor& target,
                       const LossWeights& weights, const DepthGrid* grid) {
  const bool use_wbce = grid != nullptr;
  if (pred.depth_bins() != target.depth_bins() || pred.columns() != target.columns()) {
    throw ShapeError("total_loss: prediction and target shapes differ");
  }
  if (use_wbce && grid->n_bins() != pred.depth_bins()) {
    throw ShapeError("total_loss: grid bins differ from tensor depth bins");
  }

  const auto widen = [](std::span<const float> xs) {
    return std::vector<double>(xs.begin(), xs.end());
  };
  const auto p_prob = widen(pred.plane(Channel::kProb));
  const auto t_prob = widen(target.plane(Channel::kProb));

  std::vector<double> p_top, t_top, p_bot, t_bot;
  const auto pt = pred.plane(Channel::kTop);
  const auto tt = target.plane(Channel::kTop);
  const auto pb = pred.plane(Channel::kBottom);
  const auto tb = target.plane(Channel::kBottom);
  for (std::size_t i = 0; i < t_prob.size(); ++i) {
    if (t_prob[i] != 1.0) continue;
    p_top.push_back(pt[i]);
    t_top.push_back(tt[i]);
    p_bot.push_back(pb[i]);
    t_bot.push_back(tb[i]);
  }
  const double regr_top = p_top.empty() ? 0.0 : mse(p_top, t_top);
  const double regr_bot = p_bot.empty() ? 0.0 : mse(p_bot, t_bot);

  double cls = 0.0;
  if (use_wbce) {
    std::vector<double> depths(p_prob.size());
    const auto columns = static_cast<std::size_t>(pred.columns());
    for (std::size_t i = 0; i < depths.size(); ++i) {
      depths[i] = grid->bin_to_depth(static_cast<int>(i / columns));
    }
    cls = wbce(p_prob, t_prob, depths, weights);
  } else {
    cls = bce(p_prob, t_prob);
  }
  return weights.alpha * regr_top + weights.beta * regr_bot + weights.gamma * cls;
}

}  // namespace

double total_loss(const PredictionTensor& pred, const PredictionTensor& target,
                  const LossWeights& weights, bool use_wbce, const DepthGrid& grid) {
  validate(weights);
  return total_loss_impl(pred, target, weights, use_wbce ? &grid : nullptr);
}

double total_loss(const PredictionTensor& pred, const PredictionTensor& target,
                  const LossWeights& weights, bool use_wbce) {
  validate(weights);
  if (!use_wbce) return total_loss_impl(pred, target, weights, nullptr);
  const auto grid = DepthGrid::linear(pred.depth_bins(), weights.d_min, weights.d_max);
  return total_loss_impl(pred, target, weights, &grid);
}

}  // namespace stixel::loss
