#include <algorithm>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "stixel/errors.hpp"
#include "stixel/generator.hpp"
#include "stixel/ground.hpp"
#include "support/synthetic.hpp"

using namespace stixel;

namespace {

std::vector<ImagePoint> column(double w, double v0, double v1, int n) {
  std::vector<ImagePoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back({4.0, v0 + (v1 - v0) * i / (n - 1), w});
  return pts;
}

/// Single-linkage clustering by flood fill, O(n^2).
std::size_t count_clusters(const std::vector<Eigen::Vector3d>& pts, double radius) {
  std::vector<int> label(pts.size(), -1);
  std::size_t n = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (label[i] >= 0) continue;
    std::vector<std::size_t> stack{i};
    label[i] = static_cast<int>(n);
    while (!stack.empty()) {
      const auto k = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (label[j] < 0 && (pts[j] - pts[k]).norm() <= radius) {
          label[j] = static_cast<int>(n);
          stack.push_back(j);
        }
      }
    }
    ++n;
  }
  return n;
}

std::size_t column_runs(const StixelWorld& world) {
  std::set<int> cols;
  for (const auto& s : world.stixels) cols.insert(s.col);
  std::size_t runs = 0;
  int prev = -2;
  for (int c : cols) {
    if (c != prev + 1) ++runs;
    prev = c;
  }
  return runs;
}

}  // namespace

TEST(SegmentGround, FlatPlaneIsAllGround) {
  PointCloud cloud;
  fixtures::add_plane(cloud, 0.0, 20.0, -5.0, 5.0, 0.5);
  for (double cell : {0.5, 1.0, 3.0}) {
    const auto model = segment_ground(cloud, cell);
    EXPECT_EQ(model.inlier_count(), cloud.size()) << cell;
  }
}

TEST(SegmentGround, PostAbovePlaneIsObstacle) {
  PointCloud cloud;
  fixtures::add_plane(cloud, 0.0, 20.0, -5.0, 5.0, 0.25);
  const std::size_t plane = cloud.size();
  for (double z = 0.5; z <= 2.0 + 1e-9; z += 0.1) cloud.points.emplace_back(5.1, 1.1, z);
  const auto model = segment_ground(cloud, 1.0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    EXPECT_EQ(model.inlier_mask[i], i < plane) << i;
  }
  EXPECT_NEAR(*model.height_at(5.1, 1.1), 0.0, 1e-12);
}

TEST(SegmentGround, SlopeIsTrackedPerCell) {
  PointCloud cloud;
  fixtures::add_plane(cloud, 0.0, 40.0, -5.0, 5.0, 0.2, 0.05);
  // A global plane at z = 0 would reject everything above 0.3 m, i.e. x > 6.
  const auto model = segment_ground(cloud, 1.0);
  EXPECT_EQ(model.inlier_count(), cloud.size());
}

TEST(SegmentGround, EmptyCloudGivesEmptyModel) {
  const auto model = segment_ground(PointCloud{}, 1.0);
  EXPECT_TRUE(model.inlier_mask.empty());
  EXPECT_TRUE(model.cell_heights.empty());
}

TEST(SegmentGround, RejectsBadParameters) {
  EXPECT_THROW(segment_ground(PointCloud{}, 0.0), ConfigError);
  EXPECT_THROW(GridElevationSegmenter({.cell_size = 1.0, .floor_quantile = 2.0}), ConfigError);
}

TEST(CutColumn, EmptyColumn) {
  EXPECT_TRUE(cut_column_stixels({}, 0, {}).empty());
}

TEST(CutColumn, SingleWall) {
  const auto stixels = cut_column_stixels(column(10.0, 300.0, 500.0, 20), 7, {});
  ASSERT_EQ(stixels.size(), 1u);
  EXPECT_EQ(stixels[0].col, 7);
  EXPECT_EQ(stixels[0].v_top, 300);
  EXPECT_EQ(stixels[0].v_bot, 500);
  EXPECT_EQ(stixels[0].depth, 10.0);
  EXPECT_EQ(stixels[0].prob, 1.0);
}

TEST(CutColumn, TwoSurfacesSplitOnDepthGap) {
  auto pts = column(5.0, 600.0, 700.0, 10);
  const auto far = column(20.0, 400.0, 450.0, 10);
  pts.insert(pts.end(), far.begin(), far.end());
  const auto stixels = cut_column_stixels(pts, 0, {});
  ASSERT_EQ(stixels.size(), 2u);
  EXPECT_EQ(stixels[0].depth, 5.0);
  EXPECT_EQ(stixels[1].depth, 20.0);
}

TEST(CutColumn, RelativeGapGrowsWithDepth) {
  // 3 m apart: split at 10 m (gap > max(2, 1.0)), kept at 40 m (gap < 4.0).
  auto near = column(10.0, 100.0, 200.0, 11);
  const auto near2 = column(13.0, 100.0, 200.0, 11);
  near.insert(near.end(), near2.begin(), near2.end());
  EXPECT_EQ(cut_column_stixels(near, 0, {}).size(), 2u);
  auto far = column(40.0, 100.0, 200.0, 11);
  const auto far2 = column(43.0, 100.0, 200.0, 11);
  far.insert(far.end(), far2.begin(), far2.end());
  EXPECT_EQ(cut_column_stixels(far, 0, {}).size(), 1u);
}

TEST(CutColumn, VerticalHoleSplits) {
  auto pts = column(10.0, 100.0, 200.0, 11);
  const auto lower = column(10.5, 300.0, 400.0, 11);
  pts.insert(pts.end(), lower.begin(), lower.end());
  const auto stixels = cut_column_stixels(pts, 0, {});
  ASSERT_EQ(stixels.size(), 2u);
  EXPECT_EQ(stixels[0].v_bot, 200);
  EXPECT_EQ(stixels[1].v_top, 300);
}

TEST(CutColumn, SparseClustersAreNoise) {
  EXPECT_TRUE(cut_column_stixels(column(10.0, 100.0, 110.0, 2), 0, {}).empty());
}

TEST(CutColumn, MedianDepth) {
  std::vector<ImagePoint> pts{{0, 100, 10.0}, {0, 101, 10.2}, {0, 102, 11.5}, {0, 103, 10.1}};
  const auto stixels = cut_column_stixels(pts, 0, {});
  ASSERT_EQ(stixels.size(), 1u);
  EXPECT_DOUBLE_EQ(stixels[0].depth, 10.15);
}

TEST(Holistic, PlaneOnlyGivesNoStixels) {
  const auto world = generate_holistic(fixtures::plane_only(), fixtures::vehicle_camera(),
                                       DepthGrid::linear());
  EXPECT_TRUE(world.stixels.empty());
}

TEST(Holistic, WallAtTenMetres) {
  const auto world = generate_holistic(fixtures::plane_and_wall(), fixtures::vehicle_camera(),
                                       DepthGrid::linear());
  ASSERT_FALSE(world.stixels.empty());
  std::set<int> cols;
  for (const auto& s : world.stixels) {
    cols.insert(s.col);
    EXPECT_GE(s.depth, 9.5);
    EXPECT_LE(s.depth, 10.5);
  }
  EXPECT_EQ(*cols.begin(), 40);
  EXPECT_EQ(*cols.rbegin(), 60);
  EXPECT_EQ(cols.size(), 21u);
  EXPECT_TRUE(validate_world(world).empty());
}

TEST(Holistic, BeyondRangeIsDropped) {
  PointCloud cloud = fixtures::plane_only();
  fixtures::add_wall(cloud, 80.0, -2.0, 2.0, 0.0, 6.0, 0.05, 0.05);
  const auto world = generate_holistic(cloud, fixtures::vehicle_camera(),
                                       DepthGrid::linear(64, 4.0, 66.0));
  EXPECT_TRUE(world.stixels.empty());
}

TEST(Holistic, Deterministic) {
  const auto cloud = fixtures::plane_and_wall();
  const auto a = generate_holistic(cloud, fixtures::vehicle_camera(), DepthGrid::linear());
  const auto b = generate_holistic(cloud, fixtures::vehicle_camera(), DepthGrid::linear());
  EXPECT_EQ(a, b);
}

TEST(Holistic, AddingPointsNeverShrinksExtent) {
  const auto calib = fixtures::vehicle_camera();
  PointCloud cloud = fixtures::plane_and_wall();
  const auto before = generate_holistic(cloud, calib, DepthGrid::linear());
  fixtures::add_wall(cloud, 10.0, 2.37, 3.19, 2.5, 3.2);
  const auto after = generate_holistic(cloud, calib, DepthGrid::linear());
  std::map<int, std::pair<int, int>> extent;
  for (const auto& s : after.stixels) extent[s.col] = {s.v_top, s.v_bot};
  for (const auto& s : before.stixels) {
    ASSERT_TRUE(extent.contains(s.col));
    EXPECT_LE(extent[s.col].first, s.v_top);
    EXPECT_GE(extent[s.col].second, s.v_bot);
  }
}

TEST(Holistic, ClusterCountMatchesColumnRuns) {
  const auto calib = fixtures::vehicle_camera();
  PointCloud cloud = fixtures::plane_only();
  // Three posts well apart in azimuth and at different depths.
  fixtures::add_wall(cloud, 8.0, 1.5, 2.0, 0.0, 2.0, 0.02, 0.02);
  fixtures::add_wall(cloud, 15.0, -0.5, 0.5, 0.0, 2.5, 0.02, 0.05);
  fixtures::add_wall(cloud, 22.0, -5.0, -3.5, 0.0, 1.8, 0.05, 0.05);
  const auto world = generate_holistic(cloud, calib, DepthGrid::linear());

  const auto ground = segment_ground(cloud, 1.0);
  std::vector<Eigen::Vector3d> outliers;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!ground.inlier_mask[i]) outliers.push_back(cloud.points[i]);
  }
  EXPECT_EQ(count_clusters(outliers, 0.5), 3u);
  EXPECT_EQ(column_runs(world), 3u);
}

TEST(BboxRule, NoBoxesGivesEmptyWorld) {
  const auto world = generate_bbox_rule(fixtures::plane_and_wall(), {},
                                        fixtures::vehicle_camera(), DepthGrid::linear());
  EXPECT_TRUE(world.stixels.empty());
}

TEST(BboxRule, BoxAroundWallMatchesHolistic) {
  const auto calib = fixtures::vehicle_camera();
  const auto cloud = fixtures::plane_and_wall();
  Box3D box;
  box.center = {10.0, 2.78, 1.5};
  box.length = 1.0;
  box.width = 1.2;
  box.height = 3.2;
  box.cls = ObjectClass::kVehicle;
  box.num_lidar_points = 100;
  const auto holistic = generate_holistic(cloud, calib, DepthGrid::linear());
  const auto boxed = generate_bbox_rule(cloud, {box}, calib, DepthGrid::linear());
  ASSERT_EQ(boxed.stixels.size(), holistic.stixels.size());
  for (std::size_t i = 0; i < boxed.stixels.size(); ++i) {
    Stixel expected = holistic.stixels[i];
    expected.label = static_cast<std::uint8_t>(ObjectClass::kVehicle);
    EXPECT_EQ(boxed.stixels[i], expected);
  }
}

TEST(BboxRule, AbuttingBoxesNeverMerge) {
  const auto calib = fixtures::vehicle_camera();
  const auto cloud = fixtures::plane_and_wall();
  // Column 50 covers y in (2.76, 2.80] at 10 m; split the wall inside it.
  Box3D a{.center = {10.0, 2.5725, 1.5}, .length = 1.0, .width = 0.425, .height = 3.2,
          .cls = ObjectClass::kVehicle, .num_lidar_points = 10};
  Box3D b{.center = {10.0, 3.0, 1.5}, .length = 1.0, .width = 0.43, .height = 3.2,
          .cls = ObjectClass::kPedestrian, .num_lidar_points = 10};
  const auto world = generate_bbox_rule(cloud, {a, b}, calib, DepthGrid::linear());
  std::vector<Stixel> shared;
  for (const auto& s : world.stixels) {
    if (s.col == 50) shared.push_back(s);
  }
  ASSERT_EQ(shared.size(), 2u);
  EXPECT_NE(shared[0].label, shared[1].label);
  EXPECT_NEAR(shared[0].depth, shared[1].depth, 1e-9);
}

TEST(GenerationConfig, RejectsNonPositiveThresholds) {
  GenerationConfig config;
  config.depth_gap_abs = 0.0;
  EXPECT_THROW(generate_holistic(fixtures::plane_only(), fixtures::vehicle_camera(),
                                 DepthGrid::linear(), config),
               ConfigError);
}
