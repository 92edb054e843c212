#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stixel/camera.hpp"
#include "stixel/stixel.hpp"

namespace stixel {

enum class ClusterFeature {
  /// Ground-plane (x, z) of the segment midpoint in the camera frame.
  kFootprintXZ,
  /// World-frame segment midpoint.
  kCentroid3D,
};

struct ClusterParams {
  double eps = 1.5;
  int min_pts = 3;
  ClusterFeature feature = ClusterFeature::kFootprintXZ;
};

struct Cluster {
  std::vector<std::size_t> members;
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();
  double mean_depth = 0.0;
};

struct ClusterSet {
  static constexpr int kNoise = -1;

  /// Cluster id per Stixel, or kNoise.
  std::vector<int> assignment;
  std::vector<Cluster> clusters;
};

/// Per-Stixel feature vector used for clustering (z is 0 for footprints).
std::vector<Eigen::Vector3d> cluster_features(const StixelWorld& world,
                                              const CameraCalib& calib,
                                              ClusterFeature feature);

/// DBSCAN. A point is core when at least min_pts points (itself included) lie
/// within eps. Clusters are numbered by their lexicographically smallest core
/// feature and a border point joins the lowest-numbered cluster that reaches
/// it, so the result does not depend on input order.
ClusterSet cluster(const StixelWorld& world, const CameraCalib& calib,
                   const ClusterParams& params = {});

struct ClusterExtent {
  int id = 0;
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();
  std::size_t count = 0;
  double mean_prob = 0.0;
  double mean_depth = 0.0;
};

/// World-frame bounds over all member segment endpoints.
std::vector<ClusterExtent> cluster_extents(const ClusterSet& clusters,
                                           const StixelWorld& world,
                                           const CameraCalib& calib);

/// JSON list of clusters with extents and member Stixel indices.
std::string clusters_to_json(const ClusterSet& clusters, const StixelWorld& world,
                             const CameraCalib& calib);

}  // namespace stixel
