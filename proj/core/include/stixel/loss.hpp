#pragma once

#include <span>

#include "stixel/depth_grid.hpp"
#include "stixel/tensor.hpp"

namespace stixel::loss {

/// Probabilities are clamped to [eps, 1 - eps] before taking logs.
inline constexpr double kProbEpsilon = 1e-7;

/// Term weights of the total loss plus the depth-dependent BCE multiplier,
/// which grows linearly from alpha_min at d_min to alpha_max at d_max.
struct LossWeights {
  double alpha = 1.0;  // top row regression
  double beta = 1.0;   // bottom row regression
  double gamma = 1.0;  // classification
  double alpha_min = 1.0;
  double alpha_max = 2.0;
  double d_min = 4.0;
  double d_max = 66.0;
};

void validate(const LossWeights& weights);

double mse(std::span<const double> pred, std::span<const double> target);
double bce(std::span<const double> pred_prob, std::span<const double> target);

double depth_weight(double depth, const LossWeights& weights);

/// BCE with every element scaled by depth_weight(depths[i]).
double wbce(std::span<const double> pred_prob, std::span<const double> target,
            std::span<const double> depths, const LossWeights& weights);

/// alpha * MSE(v_top) + beta * MSE(v_bot) + gamma * (W)BCE(prob). Row terms
/// only cover cells whose target probability is 1. Bin depths for WBCE come
/// from `grid`.
double total_loss(const PredictionTensor& pred, const PredictionTensor& target,
                  const LossWeights& weights, bool use_wbce, const DepthGrid& grid);

/// As above with a linear grid of D bins over [weights.d_min, weights.d_max].
double total_loss(const PredictionTensor& pred, const PredictionTensor& target,
                  const LossWeights& weights, bool use_wbce);

}  // namespace stixel::loss
