#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "stixel/cluster.hpp"
#include "stixel/errors.hpp"
#include "stixel/generator.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace stixel;

namespace {

// Camera-frame ground footprint of each Stixel's segment midpoint.
std::vector<Eigen::Vector3d> footprints(const StixelWorld& world, const CameraCalib& calib) {
  std::vector<Eigen::Vector3d> out;
  for (const auto& s : world.stixels) {
    const double u = s.col * s.width_px + 0.5 * s.width_px;
    out.emplace_back((u - calib.cx()) * s.depth / calib.fx(), s.depth, 0.0);
  }
  return out;
}

StixelWorld disc(const CameraCalib& calib, const Eigen::Vector3d& center, int n,
                 double radius) {
  StixelWorld world;
  world.image = calib.image();
  for (int i = 0; i < n; ++i) {
    const double a = 2 * 3.141592653589793 * i / n;
    const Eigen::Vector3d p = center + radius * Eigen::Vector3d(std::cos(a), std::sin(a), 0);
    const auto ip = project_point(calib, p);
    Stixel s;
    s.col = static_cast<int>(ip.u / 8);
    s.depth = ip.w;
    s.v_top = 500;
    s.v_bot = 600;
    world.stixels.push_back(s);
  }
  return world;
}

StixelWorld concat(StixelWorld a, const StixelWorld& b) {
  a.stixels.insert(a.stixels.end(), b.stixels.begin(), b.stixels.end());
  return a;
}

std::size_t noise_count(const ClusterSet& set) {
  return static_cast<std::size_t>(
      std::count(set.assignment.begin(), set.assignment.end(), ClusterSet::kNoise));
}

}  // namespace

TEST(Dbscan, SingleDenseBlob) {
  const auto calib = fixtures::vehicle_camera();
  const auto world = disc(calib, {15, 0, 1}, 10, 0.25);
  const auto set = cluster(world, calib);
  ASSERT_EQ(set.clusters.size(), 1u);
  EXPECT_EQ(set.clusters[0].members.size(), 10u);
  EXPECT_EQ(noise_count(set), 0u);
}

TEST(Dbscan, TwoSeparatedBlobs) {
  const auto calib = fixtures::vehicle_camera();
  const auto world = concat(disc(calib, {15, 0, 1}, 10, 0.25), disc(calib, {25, 0, 1}, 10, 0.25));
  const auto set = cluster(world, calib);
  EXPECT_EQ(set.clusters.size(), 2u);
  EXPECT_EQ(set.assignment,
            fixtures::brute_force_dbscan(footprints(world, calib), 1.5, 3));
}

TEST(Dbscan, IsolatedStixelsAreNoise) {
  const auto calib = fixtures::vehicle_camera();
  const auto world = concat(disc(calib, {10, 0, 1}, 1, 0.0), disc(calib, {30, 5, 1}, 1, 0.0));
  const auto set = cluster(world, calib);
  EXPECT_TRUE(set.clusters.empty());
  EXPECT_EQ(noise_count(set), 2u);
}

TEST(Dbscan, EmptyWorld) {
  const auto set = cluster(StixelWorld{}, fixtures::vehicle_camera());
  EXPECT_TRUE(set.assignment.empty());
  EXPECT_TRUE(set.clusters.empty());
  EXPECT_TRUE(cluster_extents(set, StixelWorld{}, fixtures::vehicle_camera()).empty());
}

TEST(Dbscan, RejectsBadParams) {
  EXPECT_THROW(cluster(StixelWorld{}, fixtures::vehicle_camera(), {.eps = 0.0}), ConfigError);
  EXPECT_THROW(cluster(StixelWorld{}, fixtures::vehicle_camera(), {.min_pts = 0}), ConfigError);
}

TEST(Dbscan, MatchesBruteForce) {
  std::mt19937_64 rng(17);
  const auto calib = fixtures::vehicle_camera();
  std::uniform_int_distribution<std::size_t> size(1, 500);
  for (int trial = 0; trial < 30; ++trial) {
    const auto world = fixtures::random_cluster_world(rng, size(rng));
    for (const auto& params : {ClusterParams{}, ClusterParams{.eps = 0.7, .min_pts = 5}}) {
      const auto set = cluster(world, calib, params);
      const auto ref = fixtures::brute_force_dbscan(footprints(world, calib), params.eps,
                                                    params.min_pts);
      EXPECT_TRUE(fixtures::same_partition(set.assignment, ref));
      EXPECT_EQ(set.assignment, ref);
    }
  }
}

TEST(Dbscan, Centroid3DMatchesBruteForce) {
  std::mt19937_64 rng(18);
  const auto calib = fixtures::vehicle_camera();
  const auto world = fixtures::random_cluster_world(rng, 300);
  std::vector<Eigen::Vector3d> mids;
  for (const auto& s : world.stixels) mids.push_back(stixel_to_segment3d(calib, s).midpoint());
  const ClusterParams params{.eps = 1.0, .min_pts = 3, .feature = ClusterFeature::kCentroid3D};
  EXPECT_TRUE(fixtures::same_partition(cluster(world, calib, params).assignment,
                                       fixtures::brute_force_dbscan(mids, 1.0, 3)));
}

TEST(Dbscan, PermutationInvariant) {
  std::mt19937_64 rng(19);
  const auto calib = fixtures::vehicle_camera();
  for (int trial = 0; trial < 5; ++trial) {
    const auto world = fixtures::random_cluster_world(rng, 400);
    const auto base = cluster(world, calib);
    std::vector<std::size_t> perm(world.stixels.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < 10; ++k) {
      std::shuffle(perm.begin(), perm.end(), rng);
      auto shuffled = world;
      for (std::size_t i = 0; i < perm.size(); ++i) shuffled.stixels[i] = world.stixels[perm[i]];
      const auto set = cluster(shuffled, calib);
      std::vector<int> back(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i) back[perm[i]] = set.assignment[i];
      EXPECT_EQ(back, base.assignment);
    }
  }
}

TEST(Dbscan, ClusterCountNonIncreasingInEps) {
  const auto calib = fixtures::vehicle_camera();
  const auto world = concat(disc(calib, {15, -2, 1}, 12, 0.4), disc(calib, {19, 2, 1}, 12, 0.4));
  // Ring spacing is about 0.21 m; below that every point is noise.
  std::size_t prev = world.stixels.size();
  for (double eps = 0.5; eps <= 8.0; eps += 0.1) {
    const auto n = cluster(world, calib, {.eps = eps}).clusters.size();
    EXPECT_LE(n, prev) << eps;
    prev = n;
  }
  EXPECT_EQ(cluster(world, calib, {.eps = 0.5}).clusters.size(), 2u);
  EXPECT_EQ(prev, 1u);
}

TEST(Extents, SingleStixelCluster) {
  const auto calib = fixtures::vehicle_camera();
  const auto world = disc(calib, {12, 1, 1}, 1, 0.0);
  const auto set = cluster(world, calib, {.min_pts = 1});
  const auto ext = cluster_extents(set, world, calib);
  ASSERT_EQ(ext.size(), 1u);
  const auto seg = stixel_to_segment3d(calib, world.stixels[0]);
  EXPECT_TRUE(ext[0].min.isApprox(seg.top.cwiseMin(seg.bot)));
  EXPECT_TRUE(ext[0].max.isApprox(seg.top.cwiseMax(seg.bot)));
  EXPECT_EQ(ext[0].count, 1u);
}

TEST(Extents, WallWidth) {
  const auto calib = fixtures::vehicle_camera();
  const auto world = generate_holistic(fixtures::plane_and_wall(), calib, DepthGrid::linear());
  const auto set = cluster(world, calib);
  ASSERT_EQ(set.clusters.size(), 1u);
  const auto ext = cluster_extents(set, world, calib);
  const double column_m = 8.0 * 10.0 / calib.fx();
  EXPECT_NEAR(ext[0].max.y() - ext[0].min.y(), 3.19 - 2.37, column_m);
  EXPECT_NEAR(ext[0].mean_depth, 10.0, 0.5);
  for (const auto& s : world.stixels) {
    const auto seg = stixel_to_segment3d(calib, s);
    for (const auto& p : {seg.top, seg.bot}) {
      EXPECT_TRUE((p.array() >= ext[0].min.array() - 1e-9).all());
      EXPECT_TRUE((p.array() <= ext[0].max.array() + 1e-9).all());
    }
  }
}

TEST(Extents, JsonExport) {
  const auto calib = fixtures::vehicle_camera();
  const auto world = disc(calib, {15, 0, 1}, 10, 0.25);
  const auto json = clusters_to_json(cluster(world, calib), world, calib);
  EXPECT_NE(json.find("\"members\""), std::string::npos);
  EXPECT_NE(json.find("\"min\""), std::string::npos);
}
