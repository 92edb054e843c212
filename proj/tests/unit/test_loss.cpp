#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "stixel/errors.hpp"
#include "stixel/loss.hpp"

using namespace stixel;
using namespace stixel::loss;

namespace {

// Per-element BCE straight from the definition.
double ref_bce(double p, double t) { return -(t * std::log(p) + (1 - t) * std::log(1 - p)); }

}  // namespace

TEST(Mse, Examples) {
  const std::vector<double> a{0.3, 0.7};
  EXPECT_EQ(mse(a, a), 0.0);
  EXPECT_EQ(mse(std::vector<double>{0, 0}, std::vector<double>{1, 1}), 1.0);
  EXPECT_NEAR(mse(std::vector<double>{0.2, 0.8}, std::vector<double>{0.0, 1.0}), 0.04, 1e-15);
  EXPECT_THROW(mse(std::vector<double>{1}, std::vector<double>{1, 2}), ShapeError);
  EXPECT_THROW(mse(std::vector<double>{}, std::vector<double>{}), ShapeError);
}

TEST(Bce, Examples) {
  EXPECT_NEAR(bce(std::vector<double>{0.5}, std::vector<double>{1}), std::numbers::ln2, 1e-15);
  EXPECT_LT(bce(std::vector<double>{1.0}, std::vector<double>{1}), 1e-6);
  EXPECT_NEAR(bce(std::vector<double>{0.9, 0.1}, std::vector<double>{1, 0}), 0.105361, 1e-6);
  EXPECT_NEAR(bce(std::vector<double>{0.9, 0.1}, std::vector<double>{1, 0}), -std::log(0.9),
              1e-15);
  EXPECT_TRUE(std::isfinite(bce(std::vector<double>{0.0}, std::vector<double>{1})));
}

TEST(Bce, FiniteDifferenceDerivative) {
  const double p = 0.5;
  const double h = 1e-5;
  const auto f = [](double x) { return bce(std::vector<double>{x}, std::vector<double>{1}); };
  const double numeric = (f(p + h) - f(p - h)) / (2 * h);
  EXPECT_NEAR(numeric, -1.0 / p, 1e-6);
}

TEST(DepthWeight, Endpoints) {
  const LossWeights w;
  EXPECT_EQ(depth_weight(4.0, w), 1.0);
  EXPECT_EQ(depth_weight(66.0, w), 2.0);
  EXPECT_EQ(depth_weight(35.0, w), 1.5);
  EXPECT_THROW(depth_weight(3.9, w), RangeError);
  EXPECT_THROW(depth_weight(66.1, w), RangeError);
}

TEST(DepthWeight, Affine) {
  const LossWeights w;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(4.0, 66.0);
  std::uniform_real_distribution<double> l(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double d1 = d(rng), d2 = d(rng), lam = l(rng);
    EXPECT_NEAR(depth_weight(lam * d1 + (1 - lam) * d2, w),
                lam * depth_weight(d1, w) + (1 - lam) * depth_weight(d2, w), 1e-12);
  }
}

TEST(Wbce, Examples) {
  const LossWeights w;
  EXPECT_NEAR(wbce(std::vector<double>{0.5}, std::vector<double>{1}, std::vector<double>{66}, w),
              2 * std::numbers::ln2, 1e-15);
  const std::vector<double> p{0.3, 0.3}, t{1, 1};
  EXPECT_NEAR(wbce(p, t, std::vector<double>{4, 66}, w), 1.5 * bce(p, t), 1e-15);
  EXPECT_THROW(wbce(p, t, std::vector<double>{4}, w), ShapeError);
  EXPECT_THROW(wbce(p, t, std::vector<double>{4, 70}, w), RangeError);
}

TEST(Wbce, CollapsesAndStaysWithinBounds) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> d(4.0, 66.0);
  LossWeights flat;
  flat.alpha_max = 1.0;
  const LossWeights w;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(50), t(50), ds(50);
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = u(rng);
      t[i] = u(rng) < 0.5 ? 0.0 : 1.0;
      ds[i] = d(rng);
    }
    const double b = bce(p, t);
    EXPECT_NEAR(wbce(p, t, ds, flat), b, 1e-12);
    const double wb = wbce(p, t, ds, w);
    EXPECT_GE(wb, b * w.alpha_min - 1e-12);
    EXPECT_LE(wb, b * w.alpha_max + 1e-12);
  }
}

TEST(LossWeights, Validation) {
  LossWeights w;
  w.alpha = -1;
  EXPECT_THROW(validate(w), ConfigError);
  w = {};
  w.alpha_min = 3;
  EXPECT_THROW(validate(w), ConfigError);
  w = {};
  w.d_max = w.d_min;
  EXPECT_THROW(validate(w), ConfigError);
}

class TotalLoss : public ::testing::Test {
 protected:
  PredictionTensor target{4, 5, {40, 100}};
  PredictionTensor pred{4, 5, {40, 100}};

  void SetUp() override {
    target.at(Channel::kProb, 2, 3) = 1.0f;
    target.at(Channel::kTop, 2, 3) = 0.25f;
    target.at(Channel::kBottom, 2, 3) = 0.75f;
    pred = target;
  }
};

TEST_F(TotalLoss, IdenticalIsZero) {
  // Clamping leaves a residue of about eps per cell.
  EXPECT_LT(total_loss(pred, target, {}, false), 1e-6);
  EXPECT_LT(total_loss(pred, target, {}, true), 1e-6);
}

TEST_F(TotalLoss, GammaZeroIgnoresProbability) {
  LossWeights w;
  w.gamma = 0;
  pred.at(Channel::kProb, 2, 3) = 0.2f;
  pred.at(Channel::kProb, 0, 0) = 0.7f;
  EXPECT_EQ(total_loss(pred, target, w, false), 0.0);
}

TEST_F(TotalLoss, RowsMaskedToPositiveCells) {
  LossWeights w;
  w.gamma = 0;
  pred.at(Channel::kTop, 1, 1) = 0.9f;
  pred.at(Channel::kBottom, 0, 4) = 0.1f;
  EXPECT_EQ(total_loss(pred, target, w, false), 0.0);
}

TEST_F(TotalLoss, SingleCellDiscrepancyComposes) {
  const double pt = 0.5, pb = 0.5, pp = 0.75;
  pred.at(Channel::kTop, 2, 3) = static_cast<float>(pt);
  pred.at(Channel::kBottom, 2, 3) = static_cast<float>(pb);
  pred.at(Channel::kProb, 2, 3) = static_cast<float>(pp);
  const double n = 20.0;
  // Remaining 19 cells predict exactly 0 against target 0, clamped to eps.
  const double residue = 19 * ref_bce(kProbEpsilon, 0.0);
  const double expected_cls = (ref_bce(pp, 1.0) + residue) / n;
  const double expected =
      (pt - 0.25) * (pt - 0.25) + (pb - 0.75) * (pb - 0.75) + expected_cls;
  EXPECT_NEAR(total_loss(pred, target, {}, false), expected, 1e-12);

  // Linear grid over [4, 66] with 4 bins puts bin 2 at 35 m, weight 1.5.
  const auto grid = DepthGrid::linear(4, 4.0, 66.0);
  double weighted = 0.0;
  for (int d = 0; d < 4; ++d) {
    const double a = 1.0 + grid.bin_to_depth(d) / 62.0 - 4.0 / 62.0;
    for (int c = 0; c < 5; ++c) {
      weighted += a * ((d == 2 && c == 3) ? ref_bce(pp, 1.0) : ref_bce(kProbEpsilon, 0.0));
    }
  }
  EXPECT_NEAR(total_loss(pred, target, {}, true, grid),
              (pt - 0.25) * (pt - 0.25) + (pb - 0.75) * (pb - 0.75) + weighted / n, 1e-12);
  EXPECT_NEAR(total_loss(pred, target, {}, true), total_loss(pred, target, {}, true, grid),
              1e-15);
}

TEST_F(TotalLoss, ShapeMismatch) {
  const PredictionTensor other(4, 6, {48, 100});
  EXPECT_THROW(total_loss(other, target, {}, false), ShapeError);
  EXPECT_THROW(total_loss(pred, target, {}, true, DepthGrid::linear(8, 4, 66)), ShapeError);
}

TEST_F(TotalLoss, NonNegative) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (int trial = 0; trial < 50; ++trial) {
    for (int ch = 0; ch < 3; ++ch) {
      for (int d = 0; d < 4; ++d) {
        for (int c = 0; c < 5; ++c) pred.at(static_cast<Channel>(ch), d, c) = u(rng);
      }
    }
    EXPECT_GE(total_loss(pred, target, {}, false), 0.0);
    EXPECT_GE(total_loss(pred, target, {}, true), 0.0);
  }
}
